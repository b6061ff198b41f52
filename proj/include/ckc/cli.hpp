// Copyright 2026 The ckc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CKC_CLI_HPP_
#define CKC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ckc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitTractability = 3;
inline constexpr int kExitContract = 4;

// Runs one command line (without the program name). JSON reports go to `out`,
// a one-line summary and error messages to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ckc

#endif  // CKC_CLI_HPP_
