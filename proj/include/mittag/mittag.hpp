#pragma once

#include "mittag/composition.hpp"
#include "mittag/estimate.hpp"
#include "mittag/gamma.hpp"
#include "mittag/mittag_leffler.hpp"
#include "mittag/multinomial.hpp"
#include "mittag/params.hpp"
#include "mittag/rng.hpp"
#include "mittag/verify.hpp"
