#pragma once

#include "quadform/continuous.hpp"
#include "quadform/discrete.hpp"
#include "quadform/errors.hpp"
#include "quadform/linear_reduction.hpp"
#include "quadform/matrix.hpp"
#include "quadform/operators.hpp"
#include "quadform/oracle.hpp"
#include "quadform/poly2.hpp"
#include "quadform/rational.hpp"
#include "quadform/system.hpp"
