/*
 * Copyright 2026 The osp-decide Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OSP_CLI_HPP
#define OSP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace osp::cli {

inline constexpr int kYes = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInputError = 2;
inline constexpr int kNo = 3;

/// Runs one command line (without the program name). JSON goes to `out`,
/// human-readable summaries and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace osp::cli

#endif
