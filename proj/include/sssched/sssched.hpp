#pragma once

#include "sssched/durations.hpp"
#include "sssched/error.hpp"
#include "sssched/gantt.hpp"
#include "sssched/generator.hpp"
#include "sssched/io.hpp"
#include "sssched/model.hpp"
#include "sssched/numeric.hpp"
#include "sssched/oracle.hpp"
#include "sssched/pipeline.hpp"
#include "sssched/schedulers.hpp"
#include "sssched/validate.hpp"
