#pragma once

#include <utility>
#include <vector>

#include "glasso/dictionary.hpp"

namespace glasso {

struct CoherenceOptions {
  /// Exhaustive pairwise mu_B is refused above this many groups unless
  /// allow_large is set.
  Index exhaustive_group_limit = 4096;
  bool allow_large = false;
  /// Full-dictionary spectral norm is computed exactly when min(n, p) is at
  /// most this; power iteration otherwise.
  Index exact_size_limit = 2048;
  double power_tolerance = 1e-9;
  Index power_max_iterations = 10000;
};

struct InterBlockCoherence {
  double mu_B = 0.0;
  std::pair<Index, Index> worst_pair{0, 0};
};

struct IntraBlockCoherence {
  double mu_I = 0.0;
  std::vector<double> per_block;  ///< ||X_g^T X_g - I||_2 for each group
};

struct SpectralNormResult {
  double value = 0.0;
  bool converged = true;
  Index iterations = 0;
  bool exact = true;
};

struct CoherenceReport {
  double mu_B = 0.0;
  double mu_I = 0.0;
  double spectral_norm = 0.0;
  std::pair<Index, Index> worst_pair{0, 0};
  std::vector<double> per_block_gram_deviation;
};

/// Largest singular value of a small dense matrix, by SVD.
double block_spectral_norm(const Matrix& m);

/// mu_B = max over distinct groups of ||X_g^T X_g'||_2. Needs G >= 2.
InterBlockCoherence inter_block_coherence(const BlockDictionary& x,
                                          const CoherenceOptions& options = {});

/// mu_I = max over groups of ||X_g^T X_g - I||_2. Blocks made of distinct
/// atoms of DCT or identity components are orthonormal by construction and
/// report exactly 0; every other block goes through an eigendecomposition.
IntraBlockCoherence intra_block_coherence(const BlockDictionary& x);

/// ||X||_{2->2}. Exact (Gram eigendecomposition) at desk scale, otherwise
/// power iteration on X^T X using the structured apply paths. A power
/// iteration that hits the cap returns converged = false and the last
/// estimate, which is a lower bound.
SpectralNormResult spectral_norm(const BlockDictionary& x, const CoherenceOptions& options = {});

/// ||M||_{B,1} = max over column blocks of the block spectral norm.
double block_b1_norm(const Matrix& m, const GroupPartition& column_blocks);

CoherenceReport coherence_report(const BlockDictionary& x, const CoherenceOptions& options = {});

}  // namespace glasso
