#pragma once

#include "comprep/backtrack.hpp"
#include "comprep/cnf.hpp"
#include "comprep/core.hpp"
#include "comprep/io.hpp"
#include "comprep/mfl.hpp"
#include "comprep/reduce.hpp"
#include "comprep/special.hpp"
