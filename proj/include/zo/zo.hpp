// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "zo/diagnostics.hpp"
#include "zo/errors.hpp"
#include "zo/estimator.hpp"
#include "zo/objectives.hpp"
#include "zo/optimizers.hpp"
#include "zo/run.hpp"
#include "zo/sampler.hpp"
#include "zo/trace.hpp"
#include "zo/vector_ops.hpp"
