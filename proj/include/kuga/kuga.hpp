#pragma once

// Umbrella header.

#include "kuga/commands.hpp"
#include "kuga/forms.hpp"
#include "kuga/hconditions.hpp"
#include "kuga/lie.hpp"
#include "kuga/linalg.hpp"
#include "kuga/pipeline.hpp"
#include "kuga/realize.hpp"
#include "kuga/report.hpp"
#include "kuga/rigidify.hpp"
#include "kuga/rules.hpp"
#include "kuga/spec.hpp"
#include "kuga/worked_example.hpp"
