#pragma once

#include "situp/ablation.hpp"
#include "situp/apce.hpp"
#include "situp/dataset.hpp"
#include "situp/dcf.hpp"
#include "situp/error.hpp"
#include "situp/eval.hpp"
#include "situp/feature_stack.hpp"
#include "situp/features.hpp"
#include "situp/imageproc.hpp"
#include "situp/io.hpp"
#include "situp/scale_search.hpp"
#include "situp/spectral.hpp"
#include "situp/tracker.hpp"
