// Copyright 2026 The scslab Authors
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

#ifndef SCSLAB_TOOLS_COMMANDS_H_
#define SCSLAB_TOOLS_COMMANDS_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "config.h"
#include "scslab/adversary.h"
#include "scslab/crypto.h"

namespace scslab::tools {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitConfigError = 2 };

struct RunOptions {
  std::string out_dir = ".";
  std::size_t jobs = 1;
};

// Subcommand names in the order they are listed by --help.
const std::vector<std::string>& CommandNames();

// Runs one subcommand, writing its outputs and manifest.json under
// options.out_dir and a human-readable log to `log`. Returns the exit code.
int RunCommand(std::string_view name, const ExperimentConfig& config, const RunOptions& options,
               std::ostream& log);

// The adversary encoder for block length n: a declared family member, or the
// best rate-valid scalar quantizer when kind is "best".
AdversaryEncoder MakeAdversary(const ExperimentConfig& config, std::size_t n);

// Code plus keymap for block length n, with the decoder fault applied. With
// several random keymap draws the draw with the smallest
// m ln q - H(keymap(K^n) | M_A) is kept.
Cryptosystem MakeSystem(const ExperimentConfig& config, std::size_t n, ValidationLevel level);

}  // namespace scslab::tools

#endif  // SCSLAB_TOOLS_COMMANDS_H_
