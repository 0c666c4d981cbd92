#pragma once

#include "errors.hpp"
#include "fn1d.hpp"
#include "holder.hpp"
#include "interval_set.hpp"
#include "multibump.hpp"
#include "rational.hpp"
#include "transport/advect.hpp"
#include "transport/field.hpp"
#include "transport/mixer.hpp"
#include "transport/rescale.hpp"
#include "transport/schedule.hpp"
#include "transport/spectral.hpp"
#include "wave/blowup.hpp"
#include "wave/gevrey.hpp"
#include "wave/ingredient.hpp"
#include "wave/mode.hpp"
#include "wave/speeds.hpp"
