#pragma once

// Everything except the JSON layer, which needs the vendored single headers.

#include "crystorb/crystal/crystal.hpp"
#include "crystorb/exactla.hpp"
#include "crystorb/groupcore.hpp"
#include "crystorb/hodge.hpp"
#include "crystorb/orbpi/orbpi.hpp"
#include "crystorb/quotient/quotient.hpp"
