// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <span>
#include <string>
#include <vector>

#include "retrorank/evalkit.h"
#include "retrorank/ranker.h"

namespace retrorank::report {

/// Per-query positions per configuration, followed by footer rows for the
/// mean position, MAP@k and MRR@k.
std::string performance_table(std::span<const evalkit::PositionTableRow> rows,
                              std::span<const ranker::Mode> modes, int k = 10);

/// Descriptive statistics per configuration and the pairwise comparisons
/// (t-test, Cohen's d) between configurations, one line per hypothesis.
std::string statistics_table(std::span<const evalkit::PositionTableRow> rows,
                             std::span<const ranker::Mode> modes);

/// Ranked results as an aligned text table.
std::string results_table(std::span<const ranker::RankedResult> results);

}  // namespace retrorank::report
