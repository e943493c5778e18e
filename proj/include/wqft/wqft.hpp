#pragma once

#include "wqft/error.hpp"
#include "wqft/filters.hpp"
#include "wqft/cascade.hpp"
#include "wqft/connection.hpp"
#include "wqft/refinement.hpp"
#include "wqft/field_config.hpp"
#include "wqft/coupling.hpp"
#include "wqft/momentum.hpp"
#include "wqft/variances.hpp"
#include "wqft/linalg.hpp"
#include "wqft/gaussian.hpp"
#include "wqft/preparation.hpp"
#include "wqft/region.hpp"
#include "wqft/correlator.hpp"
#include "wqft/fit.hpp"
#include "wqft/scan.hpp"
#include "wqft/resources.hpp"
#include "wqft/io.hpp"
