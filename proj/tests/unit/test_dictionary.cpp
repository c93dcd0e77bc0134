#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "../support/check_error.hpp"
#include "../support/oracles.hpp"
#include "glasso/coherence.hpp"
#include "glasso/dictionary.hpp"
#include "glasso/dictionary_io.hpp"

using namespace glasso;

namespace {

// Largest singular value by power iteration on M^T M, plain loops.
double spectral_oracle(const Matrix& m) {
  const Index r = m.rows(), c = m.cols();
  std::vector<double> v(c, 1.0), w(r), u(c);
  double est = 0.0;
  for (int it = 0; it < 5000; ++it) {
    for (Index i = 0; i < r; ++i) {
      w[i] = 0.0;
      for (Index j = 0; j < c; ++j) w[i] += m(i, j) * v[j];
    }
    for (Index j = 0; j < c; ++j) {
      u[j] = 0.0;
      for (Index i = 0; i < r; ++i) u[j] += m(i, j) * w[i];
    }
    const double nu = oracle::norm2(u);
    if (nu == 0.0) return 0.0;
    const double next = std::sqrt(nu / oracle::norm2(v));
    for (Index j = 0; j < c; ++j) v[j] = u[j] / nu;
    if (std::abs(next - est) <= 1e-15 * next) return next;
    est = next;
  }
  return est;
}

double brute_mu_b(const Matrix& x, const GroupPartition& part) {
  double best = 0.0;
  for (Index g = 0; g < part.num_groups(); ++g) {
    for (Index h = 0; h < part.num_groups(); ++h) {
      if (g == h) continue;
      Matrix cross(part.group_size(g), part.group_size(h));
      for (Index a = 0; a < part.group_size(g); ++a)
        for (Index b = 0; b < part.group_size(h); ++b) {
          double s = 0.0;
          for (Eigen::Index i = 0; i < x.rows(); ++i)
            s += x(i, part.group(g)[a]) * x(i, part.group(h)[b]);
          cross(a, b) = s;
        }
      best = std::max(best, spectral_oracle(cross));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("partition validation") {
  CHECK_GLASSO_ERROR(GroupPartition::contiguous(std::vector<Index>{}), ErrorCode::empty_partition);
  CHECK_GLASSO_ERROR(GroupPartition::contiguous(std::vector<Index>{2, 0}),
                     ErrorCode::zero_group_size);
  CHECK_GLASSO_ERROR(GroupPartition::from_sets({{0, 1}, {1, 2}}, 3), ErrorCode::overlapping_groups);
  CHECK_GLASSO_ERROR(GroupPartition::from_sets({{0}, {2}}, 3), ErrorCode::non_covering_groups);
  const GroupPartition p = GroupPartition::from_sets({{3, 0}, {1}, {2, 4}}, 5);
  CHECK(p.group(0) == IndexList{0, 3});
  CHECK(p.group_of(3) == 0);
  CHECK(p.d_min() == 1);
  CHECK(p.d_max() == 2);
  CHECK_FALSE(p.is_contiguous());
}

TEST_CASE("DCT matrix matches the textbook formula and is orthonormal") {
  for (Index n : {1, 2, 5, 8, 16}) {
    const Matrix c = dct_matrix(n);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) CHECK(c(i, k) == doctest::Approx(oracle::dct_entry(n, k, i)).epsilon(1e-12));
    const Matrix g = c.transpose() * c;
    CHECK((g - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("structured apply paths agree with the dense matrix") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::vector<BlockDictionary> dicts = {
      dct2d_basis(4, 6), dirac_basis(7), time_extend(dct2d_basis(4), 3, TemporalGroups{}),
      time_extend(dirac_basis(16), 2, SpatioTemporalGroups{4, 4, 4}),
      demix_dictionary(8, 8, 2, 4), demix_dictionary(4, 8, 3, 4)};
  for (const BlockDictionary& x : dicts) {
    const Matrix& m = x.dense();
    Vector v(x.cols()), w(x.rows());
    for (Index i = 0; i < x.cols(); ++i) v(i) = gauss(rng);
    for (Index i = 0; i < x.rows(); ++i) w(i) = gauss(rng);
    CHECK((x.apply(v) - m * v).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((x.apply_transpose(w) - m.transpose() * w).cwiseAbs().maxCoeff() < 1e-10);
    for (Index j = 0; j < x.cols(); ++j) CHECK(std::abs(m.col(j).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("demixing dictionary layout") {
  const BlockDictionary x = demix_dictionary(10, 10, 8, 4);
  // N = 100, G = N + N/D.
  CHECK(x.rows() == 800);
  CHECK(x.cols() == 1600);
  CHECK(x.partition().num_groups() == 125);
  CHECK(x.partition().group_size(0) == 8);
  CHECK(x.partition().group_size(100) == 32);
  CHECK(x.descriptor() == "concat(kronecker_time(8,dct2d(10,10)),kronecker_time(8,dirac(10,10)))");
  // First tile: pixels (0,0), (0,1), (1,0), (1,1) of every frame.
  const IndexList& tile = x.partition().group(100);
  CHECK(tile[0] == 800 + 0);
  CHECK(tile[1] == 800 + 1);
  CHECK(tile[2] == 800 + 10);
  CHECK(tile[3] == 800 + 11);
  CHECK(tile[4] == 800 + 100);
  CHECK_GLASSO_ERROR(demix_dictionary(10, 10, 8, 3), ErrorCode::invalid_argument);
}

TEST_CASE("from_dense enforces unit columns") {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 0) = 1.1;
  CHECK_GLASSO_ERROR(BlockDictionary::from_dense(m, GroupPartition::singletons(3)),
                     ErrorCode::non_unit_column);
  CHECK_NOTHROW(BlockDictionary::from_dense_unchecked(m, GroupPartition::singletons(3)));
}

TEST_CASE("coherence examples") {
  const BlockDictionary d4 = dirac_basis(4);
  CHECK(inter_block_coherence(d4).mu_B == 0.0);
  CHECK(intra_block_coherence(d4).mu_I == 0.0);

  const BlockDictionary twice =
      concat_blocks(dirac_basis(2).with_partition(GroupPartition::contiguous(std::vector<Index>{2})),
                    dirac_basis(2).with_partition(GroupPartition::contiguous(std::vector<Index>{2})));
  CHECK(inter_block_coherence(twice).mu_B == doctest::Approx(1.0));

  CHECK_GLASSO_ERROR(inter_block_coherence(
                         dirac_basis(3).with_partition(GroupPartition::contiguous(std::vector<Index>{3}))),
                     ErrorCode::undefined_coherence);

  // Two columns with inner product 0.3: eigenvalues of the Gram minus I are +-0.3.
  Matrix m(2, 2);
  m << 1.0, 0.3, 0.0, std::sqrt(1.0 - 0.09);
  const BlockDictionary pair = BlockDictionary::from_dense(m, GroupPartition::contiguous(std::vector<Index>{2}));
  CHECK(intra_block_coherence(pair).mu_I == doctest::Approx(0.3).epsilon(1e-12));

  const BlockDictionary small = demix_dictionary(4, 4, 1, 4);
  const double mu = inter_block_coherence(small).mu_B;
  CHECK(mu <= 1.0);
  CHECK(mu == doctest::Approx(brute_mu_b(small.dense(), small.partition())).epsilon(1e-9));
}

TEST_CASE("brute-force mu_B oracle on random dictionaries") {
  std::mt19937_64 rng(9);
  for (int c = 0; c < 5; ++c) {
    const Matrix m = oracle::random_unit_columns(12, 20, rng);
    const GroupPartition part = GroupPartition::from_sets(oracle::random_sets(20, 4, rng), 20);
    const BlockDictionary x = BlockDictionary::from_dense(m, part);
    const InterBlockCoherence r = inter_block_coherence(x);
    CHECK(r.mu_B == doctest::Approx(brute_mu_b(m, part)).epsilon(1e-9));
    // The reported pair attains mu_B.
    const Matrix cross = x.block(r.worst_pair.first).transpose() * x.block(r.worst_pair.second);
    CHECK(block_spectral_norm(cross) == doctest::Approx(r.mu_B));
  }
}

TEST_CASE("coherence is invariant under group permutation") {
  std::mt19937_64 rng(10);
  const Matrix m = oracle::random_unit_columns(10, 18, rng);
  const GroupPartition part = GroupPartition::from_sets(oracle::random_sets(18, 3, rng), 18);
  const BlockDictionary x = BlockDictionary::from_dense(m, part);
  IndexList order(part.num_groups());
  for (Index g = 0; g < order.size(); ++g) order[g] = g;
  std::shuffle(order.begin(), order.end(), rng);
  const BlockDictionary y = x.with_partition(part.permuted(order));
  CHECK(inter_block_coherence(y).mu_B == doctest::Approx(inter_block_coherence(x).mu_B));
  CHECK(intra_block_coherence(y).mu_I == doctest::Approx(intra_block_coherence(x).mu_I));
}

TEST_CASE("coherence invariants on demixing scenes") {
  for (Index side : {4, 8}) {
    const BlockDictionary x = demix_dictionary(side, side, 2, 4);
    const CoherenceReport r = coherence_report(x);
    CHECK(r.mu_I == 0.0);
    CHECK(r.mu_B >= 0.0);
    CHECK(r.mu_B <= std::sqrt(16.0 / static_cast<double>(side * side)));
    CHECK(r.spectral_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // mu_B is attained by the reported pair.
    const Matrix cross = x.block(r.worst_pair.first).transpose() * x.block(r.worst_pair.second);
    CHECK(block_spectral_norm(cross) == doctest::Approx(r.mu_B));
  }
}

TEST_CASE("spectral norm by power iteration matches the exact value") {
  const BlockDictionary x = demix_dictionary(8, 8, 2, 4);
  CoherenceOptions opts;
  opts.exact_size_limit = 1;
  const SpectralNormResult p = spectral_norm(x, opts);
  CHECK(p.converged);
  CHECK_FALSE(p.exact);
  CHECK(p.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("block B,1 norm is the largest block spectral norm") {
  Matrix m(2, 3);
  m << 3.0, 0.0, 1.0, 4.0, 0.0, 1.0;
  const GroupPartition blocks = GroupPartition::contiguous(std::vector<Index>{1, 2});
  CHECK(block_b1_norm(m, blocks) == doctest::Approx(5.0));
}

TEST_CASE("BDX1 round trip") {
  std::mt19937_64 rng(11);
  const Matrix m = oracle::random_unit_columns(6, 9, rng);
  const GroupPartition part = GroupPartition::from_sets(oracle::random_sets(9, 3, rng), 9);
  const std::vector<BlockDictionary> dicts = {BlockDictionary::from_dense(m, part),
                                              demix_dictionary(4, 4, 2, 4)};
  for (const BlockDictionary& x : dicts) {
    std::stringstream buf;
    write_bdx(buf, x);
    const std::string bytes = buf.str();
    CHECK(bytes.substr(0, 4) == "BDX1");
    const BlockDictionary back = read_bdx(buf);
    CHECK(back.partition() == x.partition());
    CHECK(back.descriptor() == x.descriptor());
    CHECK(back.dense() == x.dense());
  }
  std::stringstream truncated(std::string("BDX1\x02\x00", 6));
  CHECK_GLASSO_ERROR(read_bdx(truncated), ErrorCode::format_error);
}

TEST_CASE("descriptor parsing") {
  const BlockDictionary x = demix_dictionary(4, 4, 3, 4);
  const StructurePtr s = parse_descriptor(x.descriptor());
  REQUIRE(s != nullptr);
  CHECK(describe(*s) == x.descriptor());
  CHECK(materialize(*s) == x.dense());
  CHECK(parse_descriptor("dense(3,3)") == nullptr);
}
