#pragma once

#include "qbrach/algebra.hpp"
#include "qbrach/bender.hpp"
#include "qbrach/equivalence.hpp"
#include "qbrach/errors.hpp"
#include "qbrach/mostafazadeh.hpp"
#include "qbrach/oracle.hpp"
