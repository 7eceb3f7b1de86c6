// Copyright 2026 The adax Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "adax/cli/experiments.hpp"
#include "adax/cli/run_config.hpp"

int main(int argc, char** argv) {
  adax::cli::RunConfig rc;
  try {
    rc = adax::cli::parse_args(argc, argv);
  } catch (const adax::cli::HelpRequested& h) {
    std::cout << h.text;
    return 0;
  } catch (const adax::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }
  try {
    return adax::cli::run_and_emit(rc, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
