#include <fstream>

#include "../common/binary.hpp"
#include "glasso/dictionary_io.hpp"
#include "glasso/error.hpp"
#include "glasso/instance_io.hpp"

namespace glasso {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::io_failure, "cannot open " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io_failure, "cannot open " + path.string());
  return in;
}

Vector read_vector(std::istream& in, Index n, std::string_view what) {
  Vector v(n);
  binary::get_f64_array(in, v.data(), n, what);
  return v;
}

}  // namespace

void write_six(std::ostream& out, const SyntheticInstance& inst) {
  using namespace binary;
  put_magic(out, "SIX1");
  put_u32(out, inst.dictionary.rows());
  put_u32(out, inst.dictionary.cols());
  put_u32(out, inst.dictionary.partition().num_groups());
  put_f64(out, inst.sigma);
  put_u64(out, inst.seed);
  write_bdx(out, inst.dictionary);
  put_f64_array(out, inst.truth.coefficients.data(), inst.truth.coefficients.size());
  put_f64_array(out, inst.noise.data(), inst.noise.size());
  put_f64_array(out, inst.observations.data(), inst.observations.size());
}

SyntheticInstance read_six(std::istream& in) {
  using namespace binary;
  expect_magic(in, "SIX1");
  const Index n = get_u32(in, "n");
  const Index p = get_u32(in, "p");
  const Index G = get_u32(in, "G");
  SyntheticInstance inst;
  inst.sigma = get_f64(in, "sigma");
  inst.seed = get_u64(in, "seed");
  inst.dictionary = read_bdx(in);
  require(inst.dictionary.rows() == n && inst.dictionary.cols() == p &&
              inst.dictionary.partition().num_groups() == G,
          ErrorCode::format_error, "SIX1: header disagrees with the embedded dictionary");
  inst.truth = GroupSparseSignal::from_coefficients(read_vector(in, p, "truth"),
                                                    inst.dictionary.partition());
  inst.noise = read_vector(in, n, "noise");
  inst.observations = read_vector(in, n, "observations");
  return inst;
}

void save_six(const std::filesystem::path& path, const SyntheticInstance& inst) {
  auto out = open_out(path);
  write_six(out, inst);
}

SyntheticInstance load_six(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_six(in);
}

void write_wfd(std::ostream& out, const Wavefield& w) {
  using namespace binary;
  require(static_cast<Index>(w.data.size()) == w.rows * w.cols * w.frames,
          ErrorCode::dimension_mismatch, "wavefield data length does not match its shape");
  put_magic(out, "WFD1");
  put_u32(out, w.rows);
  put_u32(out, w.cols);
  put_u32(out, w.frames);
  put_f64_array(out, w.data.data(), w.data.size());
}

Wavefield read_wfd(std::istream& in) {
  using namespace binary;
  expect_magic(in, "WFD1");
  Wavefield w;
  w.rows = get_u32(in, "rows");
  w.cols = get_u32(in, "cols");
  w.frames = get_u32(in, "T");
  require(w.rows > 0 && w.cols > 0 && w.frames > 0, ErrorCode::format_error,
          "WFD1: empty shape");
  w.data = read_vector(in, w.rows * w.cols * w.frames, "frames");
  return w;
}

void save_wfd(const std::filesystem::path& path, const Wavefield& w) {
  auto out = open_out(path);
  write_wfd(out, w);
}

Wavefield load_wfd(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_wfd(in);
}

void save_estimate(const std::filesystem::path& path, const Vector& v) {
  auto out = open_out(path);
  binary::put_magic(out, "EST1");
  binary::put_u32(out, v.size());
  binary::put_f64_array(out, v.data(), v.size());
}

Vector load_estimate(const std::filesystem::path& path) {
  auto in = open_in(path);
  binary::expect_magic(in, "EST1");
  const Index p = binary::get_u32(in, "p");
  return read_vector(in, p, "estimate");
}

}  // namespace glasso
