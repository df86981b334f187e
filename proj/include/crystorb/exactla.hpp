#pragma once

#include "crystorb/core/number.hpp"
#include "crystorb/exactla/congruence.hpp"
#include "crystorb/exactla/linear_algebra.hpp"
#include "crystorb/exactla/matrix.hpp"
#include "crystorb/exactla/normal_form.hpp"
