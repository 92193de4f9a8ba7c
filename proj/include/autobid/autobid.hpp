#pragma once

#include "autobid/bound_elimination.hpp"
#include "autobid/core_model.hpp"
#include "autobid/errors.hpp"
#include "autobid/generate.hpp"
#include "autobid/ic_analysis.hpp"
#include "autobid/io.hpp"
#include "autobid/nonuniform.hpp"
#include "autobid/oracle.hpp"
#include "autobid/rational.hpp"
#include "autobid/uniform.hpp"
