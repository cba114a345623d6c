#pragma once

namespace bousslyap {

/// Entry point behind tools/main.cpp, separated so tests can drive the CLI
/// in-process. Exit codes: 0 success, 1 validation/usage/I-O error,
/// 2 numerical failure (contraction violation, blow-up, singular system).
int cli_main(int argc, const char* const* argv);

}  // namespace bousslyap
