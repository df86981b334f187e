#pragma once

#include "crystorb/groupcore/character_table.hpp"
#include "crystorb/groupcore/cyclotomic.hpp"
#include "crystorb/groupcore/matrix_group.hpp"
