// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "zstab/harness.hpp"
int main(){ return 0; }
