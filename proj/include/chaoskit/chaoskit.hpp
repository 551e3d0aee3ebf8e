#pragma once

#include "chaoskit/bounds.hpp"
#include "chaoskit/chaos.hpp"
#include "chaoskit/correlation.hpp"
#include "chaoskit/errors.hpp"
#include "chaoskit/fixtures.hpp"
#include "chaoskit/forms.hpp"
#include "chaoskit/hadamard.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/inequalities.hpp"
#include "chaoskit/moments.hpp"
#include "chaoskit/optimizer.hpp"
#include "chaoskit/rational.hpp"
#include "chaoskit/reports.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/semigroup.hpp"
