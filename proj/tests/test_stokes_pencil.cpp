// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
