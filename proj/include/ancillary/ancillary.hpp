#pragma once

#include "ancillary/characterization.hpp"
#include "ancillary/designs.hpp"
#include "ancillary/empirical.hpp"
#include "ancillary/harness.hpp"
#include "ancillary/location_tests.hpp"
#include "ancillary/parallel.hpp"
#include "ancillary/reference.hpp"
#include "ancillary/regression.hpp"
#include "ancillary/report.hpp"
#include "ancillary/rng.hpp"
#include "ancillary/toy.hpp"
#include "ancillary/verification.hpp"
#include "ancillary/version.hpp"
