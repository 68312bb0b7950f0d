#pragma once

namespace eislab {

// Effective parallelism: min(logical cores, EISLAB_THREADS) when the env var
// is a positive integer, otherwise all logical cores.
int thread_count();

// Installs the cap into the OpenMP runtime. Idempotent; called by the CLI and
// by tests that exercise the determinism contract.
void apply_thread_env();

// Explicit override (used by the determinism tests).
void set_threads(int n);

}  // namespace eislab
