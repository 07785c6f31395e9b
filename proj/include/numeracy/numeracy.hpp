#pragma once

#include "numeracy/analysis.hpp"
#include "numeracy/bundle.hpp"
#include "numeracy/error.hpp"
#include "numeracy/matrix.hpp"
#include "numeracy/metrics.hpp"
#include "numeracy/pca.hpp"
#include "numeracy/probesets.hpp"
#include "numeracy/rank.hpp"
#include "numeracy/report_json.hpp"
#include "numeracy/rng.hpp"
#include "numeracy/svg.hpp"
#include "numeracy/sweep.hpp"
#include "numeracy/synth.hpp"
