#pragma once

#include <optional>

namespace fudge::kernels {

// Inner-loop arithmetic used by the proximal solver and edge scoring.
// Each operation has a scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The active table is selected once at runtime from
// CPU capabilities; force_isa() pins it for equivalence testing.
//
// All matrices are dense row-major. Aliasing: the elementwise ops (axpby,
// sub) permit out == x or out == y; gemm and the block ops require the
// output to be distinct from the inputs.

// C = A * B with A (n x k), B (k x m), C (n x m). C is overwritten.
using GemmFn = void (*)(const double* A, const double* B, double* C, int n, int k, int m);
// out[i] = x[i] + a * y[i]
using AxpbyFn = void (*)(double* out, const double* x, double a, const double* y, int n);
// out[i] = x[i] - y[i]
using SubFn = void (*)(double* out, const double* x, const double* y, int n);
using DotFn = double (*)(const double* a, const double* b, int n);
using SumSqFn = double (*)(const double* a, int n);
// Frobenius norms of the p x p grid of M x M blocks of a pM x pM matrix,
// written to out in row-major block order (p*p values).
using BlockFrobNormsFn = void (*)(const double* A, int p, int M, double* out);
// Blockwise soft-threshold of a pM x pM matrix: each M x M block is zeroed
// when its Frobenius norm is <= t and scaled by (norm - t) / norm otherwise.
// Returns the sum of the output block norms.
using GroupSoftThresholdFn = double (*)(const double* A, double* out, int p, int M, double t);

struct Ops {
  GemmFn gemm;
  AxpbyFn axpby;
  SubFn sub;
  DotFn dot;
  SumSqFn sum_sq;
  BlockFrobNormsFn block_frob_norms;
  GroupSoftThresholdFn group_soft_threshold;
};

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

// Reference table; always available.
const Ops& scalar_ops();

// Table selected by runtime CPU detection (or a force_isa override).
const Ops& active();
Isa active_isa();

// Pin the dispatched table; std::nullopt restores auto detection.
// Requesting an ISA the CPU lacks falls back to scalar.
void force_isa(std::optional<Isa> isa);

// Set by the build when the AVX2 translation unit was compiled with the
// required flags; null otherwise.
const Ops* avx2_ops_or_null();
bool cpu_has_avx2();

}  // namespace fudge::kernels
