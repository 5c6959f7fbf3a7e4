// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <istream>
#include <string_view>

#include "friedman/ranks.hpp"

namespace friedman {

enum class InputFormat { scores, ranks };

InputFormat parse_input_format(std::string_view name);

//! Reads one trial per row, one treatment per column. A first row containing
//! any non-numeric field is treated as a header. Blank lines are skipped.
RankMatrix read_rank_csv(std::istream& in, InputFormat format);
RankMatrix read_rank_csv(const std::filesystem::path& path, InputFormat format);

}  // namespace friedman
