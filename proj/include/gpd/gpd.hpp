#pragma once

#include "gpd/blocks.hpp"
#include "gpd/bounds.hpp"
#include "gpd/constructions.hpp"
#include "gpd/core.hpp"
#include "gpd/exact.hpp"
#include "gpd/io.hpp"
#include "gpd/verifier.hpp"
