#include "glasso/coherence.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "glasso/error.hpp"
#include "glasso/rng.hpp"

namespace glasso {

double block_spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

InterBlockCoherence inter_block_coherence(const BlockDictionary& x,
                                          const CoherenceOptions& options) {
  const GroupPartition& part = x.partition();
  const Index G = part.num_groups();
  require(G >= 2, ErrorCode::undefined_coherence, "mu_B needs at least two groups");
  require(G <= options.exhaustive_group_limit || options.allow_large, ErrorCode::too_many_groups,
          std::to_string(G) + " groups exceed the exhaustive limit of " +
              std::to_string(options.exhaustive_group_limit) + " (set allow_large)");

  const Matrix& dense = x.dense();
  InterBlockCoherence out;
  out.mu_B = -1.0;
  for (Index g = 0; g + 1 < G; ++g) {
    const Matrix xg = x.block(g);
    // Row strip X_g^T X, then cut the cross-Gram blocks of later groups.
    const Eigen::MatrixXd strip = xg.transpose() * dense;
    for (Index h = g + 1; h < G; ++h) {
      const IndexList& cols = part.group(h);
      Matrix cross(strip.rows(), static_cast<Eigen::Index>(cols.size()));
      for (Index k = 0; k < cols.size(); ++k) cross.col(k) = strip.col(cols[k]);
      const double v = block_spectral_norm(cross);
      if (v > out.mu_B) {
        out.mu_B = v;
        out.worst_pair = {g, h};
      }
    }
  }
  return out;
}

namespace {

// True when the listed columns of the node are orthonormal by construction
// (distinct atoms of DCT or identity leaves, possibly repeated over frames).
// Their Gram deviation is then exactly zero; the rounded entries would only
// contribute ulp-level noise.
bool orthonormal_by_construction(const StructureNode& node, std::span<const Index> cols) {
  switch (node.kind) {
    case StructureKind::dense:
      return false;
    case StructureKind::dct2d:
    case StructureKind::dirac:
      return true;
    case StructureKind::kronecker_time:
      return orthonormal_by_construction(*node.inner, {});
    case StructureKind::concat: {
      if (cols.empty()) return false;
      const Index split = node.left->cols;
      const bool all_left = std::all_of(cols.begin(), cols.end(), [&](Index j) { return j < split; });
      const bool all_right = std::all_of(cols.begin(), cols.end(), [&](Index j) { return j >= split; });
      if (all_left) return orthonormal_by_construction(*node.left, cols);
      if (all_right) {
        IndexList shifted(cols.begin(), cols.end());
        for (Index& j : shifted) j -= split;
        return orthonormal_by_construction(*node.right, shifted);
      }
      return false;
    }
  }
  return false;
}

}  // namespace

IntraBlockCoherence intra_block_coherence(const BlockDictionary& x) {
  const GroupPartition& part = x.partition();
  IntraBlockCoherence out;
  out.per_block.resize(part.num_groups());
  for (Index g = 0; g < part.num_groups(); ++g) {
    if (orthonormal_by_construction(x.structure(), part.group(g))) {
      out.per_block[g] = 0.0;
      continue;
    }
    const Matrix xg = x.block(g);
    Eigen::MatrixXd gram = xg.transpose() * xg;
    gram -= Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    double dev = 0.0;
    if (gram.rows() == 1) {
      dev = std::abs(gram(0, 0));
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
      dev = eig.eigenvalues().cwiseAbs().maxCoeff();
    }
    out.per_block[g] = dev;
    out.mu_I = std::max(out.mu_I, dev);
  }
  return out;
}

SpectralNormResult spectral_norm(const BlockDictionary& x, const CoherenceOptions& options) {
  SpectralNormResult out;
  const Index n = x.rows(), p = x.cols();
  if (std::min(n, p) <= options.exact_size_limit) {
    const Matrix& m = x.dense();
    Eigen::MatrixXd gram = n <= p ? Eigen::MatrixXd(m * m.transpose())
                                  : Eigen::MatrixXd(m.transpose() * m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    out.value = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
    return out;
  }

  out.exact = false;
  Rng rng(0x5eed5eedULL);
  Vector v(p), xv(n), w(p);
  for (Index j = 0; j < p; ++j) v(j) = rng.gaussian();
  v.normalize();
  double estimate = 0.0;
  for (Index it = 1; it <= options.power_max_iterations; ++it) {
    x.apply(std::span<const double>(v.data(), p), std::span<double>(xv.data(), n));
    x.apply_transpose(std::span<const double>(xv.data(), n), std::span<double>(w.data(), p));
    const double wn = w.norm();
    const double next = std::sqrt(wn);
    out.iterations = it;
    if (wn == 0.0) {
      out.value = 0.0;
      return out;
    }
    v = w / wn;
    if (it > 1 && std::abs(next - estimate) <= options.power_tolerance * next) {
      out.value = next;
      return out;
    }
    estimate = next;
  }
  out.value = estimate;
  out.converged = false;
  return out;
}

double block_b1_norm(const Matrix& m, const GroupPartition& column_blocks) {
  require(static_cast<Index>(m.cols()) == column_blocks.num_columns(),
          ErrorCode::dimension_mismatch, "block partition does not match matrix columns");
  double best = 0.0;
  for (Index g = 0; g < column_blocks.num_groups(); ++g) {
    const IndexList& cols = column_blocks.group(g);
    Matrix block(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (Index k = 0; k < cols.size(); ++k) block.col(k) = m.col(cols[k]);
    best = std::max(best, block_spectral_norm(block));
  }
  return best;
}

CoherenceReport coherence_report(const BlockDictionary& x, const CoherenceOptions& options) {
  CoherenceReport report;
  const InterBlockCoherence inter = inter_block_coherence(x, options);
  report.mu_B = inter.mu_B;
  report.worst_pair = inter.worst_pair;
  IntraBlockCoherence intra = intra_block_coherence(x);
  report.mu_I = intra.mu_I;
  report.per_block_gram_deviation = std::move(intra.per_block);
  const SpectralNormResult spec = spectral_norm(x, options);
  require(spec.converged, ErrorCode::not_converged,
          "power iteration did not converge; last estimate " + std::to_string(spec.value));
  report.spectral_norm = spec.value;
  return report;
}

}  // namespace glasso
