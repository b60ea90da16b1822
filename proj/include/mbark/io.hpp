// Copyright 2026 The mbark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MBARK_IO_HPP
#define MBARK_IO_HPP

#include <filesystem>
#include <string>

namespace mbark {

/// Shortest round-trip decimal form ('.' decimal separator, locale-free).
std::string format_double(double v);

/// Write-temp-then-rename so partially written files are never observed.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Throws with the expected path spelled out when an upstream artifact is
/// missing.
std::string read_required_artifact(const std::filesystem::path& path);

}  // namespace mbark

#endif  // MBARK_IO_HPP
