#pragma once

#include "ordet/error.hpp"
#include "ordet/evt.hpp"
#include "ordet/law.hpp"
#include "ordet/mc.hpp"
#include "ordet/network.hpp"
#include "ordet/numeric.hpp"
#include "ordet/orderstats.hpp"
#include "ordet/pmf.hpp"
#include "ordet/policy.hpp"
#include "ordet/random.hpp"
#include "ordet/version.hpp"
