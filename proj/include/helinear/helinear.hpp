// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "helinear/analytics.hpp"
#include "helinear/conv_schemes.hpp"
#include "helinear/cost.hpp"
#include "helinear/errors.hpp"
#include "helinear/he_mock.hpp"
#include "helinear/layout.hpp"
#include "helinear/mv_schemes.hpp"
#include "helinear/network.hpp"
#include "helinear/oracle.hpp"
#include "helinear/ring.hpp"
#include "helinear/sharing.hpp"
#include "helinear/verify.hpp"
