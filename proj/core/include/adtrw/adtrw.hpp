#pragma once

#include "adtrw/actrw.hpp"
#include "adtrw/bell.hpp"
#include "adtrw/density.hpp"
#include "adtrw/error.hpp"
#include "adtrw/generator.hpp"
#include "adtrw/lattice.hpp"
#include "adtrw/mittag_leffler.hpp"
#include "adtrw/monte_carlo.hpp"
#include "adtrw/recurrence.hpp"
#include "adtrw/sampling.hpp"
#include "adtrw/series.hpp"
#include "adtrw/sibuya.hpp"
#include "adtrw/version.hpp"
#include "adtrw/walk.hpp"
