#pragma once

#include "crystorb/hodge/complex_structure.hpp"
#include "crystorb/hodge/gaussian.hpp"
#include "crystorb/hodge/omega.hpp"
#include "crystorb/hodge/teichmuller.hpp"
