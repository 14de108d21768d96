#pragma once

#include "subact/errors.hpp"
#include "subact/caps.hpp"
#include "subact/rational.hpp"
#include "subact/index_set.hpp"
#include "subact/random.hpp"
#include "subact/permutation.hpp"
#include "subact/group.hpp"
#include "subact/groups.hpp"
#include "subact/action.hpp"
#include "subact/set_function.hpp"
#include "subact/minimize.hpp"
#include "subact/linear.hpp"
#include "subact/theorems.hpp"
