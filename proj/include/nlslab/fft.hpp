// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Iterative radix-2 complex FFT for power-of-two sizes, with cached twiddle
// plans. Forward transforms are unnormalized (X_m = sum_j x_j e^{-2πi mj/N});
// inverse transforms carry the 1/N^d factor. 2D transforms run row/column
// batches in parallel; large 1D transforms parallelize the butterfly loop of
// each stage. Serial and parallel paths produce bit-identical results.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace nlslab::fft {

using cplx = std::complex<double>;

struct Plan {
  int n = 0;
  std::vector<std::uint32_t> bitrev;
  // Twiddles for all stages, len = 2,4,...,n; stage s starts at offset
  // stage_off[s] and holds len/2 entries exp(-2πi j/len).
  std::vector<cplx> twiddle;
  std::vector<std::size_t> stage_off;
};

// Shared, lazily built plan registry (thread-safe).
const Plan& plan_for(int n);

// In-place unnormalized transform of one length-n sequence (serial).
void transform(cplx* data, const Plan& plan, bool inverse);

// Same, with the per-stage butterfly loop parallelized; used for single
// large 1D transforms.
void transform_mt(cplx* data, const Plan& plan, bool inverse);

void forward_1d(cplx* data, int n);
void inverse_1d(cplx* data, int n);  // scales by 1/n
void forward_2d(cplx* data, int n);  // n-by-n, row-major
void inverse_2d(cplx* data, int n);  // scales by 1/n^2

bool is_pow2(int n);

}  // namespace nlslab::fft
