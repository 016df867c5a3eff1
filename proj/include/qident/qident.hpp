// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qident/circuit.hpp"
#include "qident/dense_sim.hpp"
#include "qident/error.hpp"
#include "qident/qma_verifier.hpp"
#include "qident/random.hpp"
#include "qident/reduction.hpp"
#include "qident/report.hpp"
#include "qident/spectral.hpp"
