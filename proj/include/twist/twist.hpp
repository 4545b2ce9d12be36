#pragma once

#include "error.hpp"
#include "density.hpp"
#include "group.hpp"
#include "structure.hpp"
#include "automorphism.hpp"
#include "splitting.hpp"
#include "constructions.hpp"
#include "catalog.hpp"
#include "parallel.hpp"
#include "survey.hpp"
