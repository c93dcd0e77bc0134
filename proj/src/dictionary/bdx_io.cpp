#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "../common/binary.hpp"
#include "glasso/dictionary_io.hpp"
#include "glasso/error.hpp"

namespace glasso {
namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(const std::string& text) : text_(text) {}

  // nullptr when a dense leaf is met; the caller then keeps the dense form.
  StructurePtr parse_all() {
    StructurePtr node = parse();
    if (node && pos_ != text_.size()) fail(ErrorCode::format_error, "trailing descriptor text");
    return node;
  }

 private:
  StructurePtr parse() {
    const std::string name = ident();
    expect('(');
    if (name == "dense") {
      return nullptr;
    }
    if (name == "dct2d") {
      const Index r = number();
      expect(',');
      const Index c = number();
      expect(')');
      return dct2d_basis(r, c).structure_ptr();
    }
    if (name == "dirac") {
      const Index a = number();
      Index total = a;
      Index r = 0, c = 0;
      if (peek() == ',') {
        expect(',');
        r = a;
        c = number();
        total = r * c;
      }
      expect(')');
      auto node = std::make_shared<StructureNode>(*dirac_basis(total).structure_ptr());
      if (r != 0) {
        node->image_rows = r;
        node->image_cols = c;
      }
      return node;
    }
    if (name == "kronecker_time") {
      const Index frames = number();
      expect(',');
      StructurePtr inner = parse();
      if (!inner) return nullptr;
      expect(')');
      auto node = std::make_shared<StructureNode>();
      node->kind = StructureKind::kronecker_time;
      node->frames = frames;
      node->rows = inner->rows * frames;
      node->cols = inner->cols * frames;
      node->inner = std::move(inner);
      return node;
    }
    if (name == "concat") {
      StructurePtr left = parse();
      if (!left) return nullptr;
      expect(',');
      StructurePtr right = parse();
      if (!right) return nullptr;
      expect(')');
      require(left->rows == right->rows, ErrorCode::format_error,
              "concat descriptor with mismatched row counts");
      auto node = std::make_shared<StructureNode>();
      node->kind = StructureKind::concat;
      node->rows = left->rows;
      node->cols = left->cols + right->cols;
      node->left = std::move(left);
      node->right = std::move(right);
      return node;
    }
    fail(ErrorCode::format_error, "unknown structure tag '" + name + "'");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    require(peek() == c, ErrorCode::format_error,
            std::string("descriptor: expected '") + c + "' at offset " + std::to_string(pos_));
    ++pos_;
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_'))
      ++pos_;
    require(pos_ > start, ErrorCode::format_error, "descriptor: expected a tag name");
    return text_.substr(start, pos_ - start);
  }

  Index number() {
    const std::size_t start = pos_;
    Index v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<Index>(text_[pos_] - '0');
      ++pos_;
    }
    require(pos_ > start && v > 0, ErrorCode::format_error, "descriptor: expected a positive size");
    return v;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

StructurePtr parse_descriptor(const std::string& descriptor) {
  return DescriptorParser(descriptor).parse_all();
}

void write_bdx(std::ostream& out, const BlockDictionary& x) {
  using namespace binary;
  const GroupPartition& part = x.partition();
  put_magic(out, "BDX1");
  put_u32(out, x.rows());
  put_u32(out, x.cols());
  put_u32(out, part.num_groups());
  for (Index g = 0; g < part.num_groups(); ++g) put_u32(out, part.group_size(g));
  const Matrix& m = x.dense();
  put_f64_array(out, m.data(), static_cast<std::size_t>(m.size()));
  const std::string desc = x.descriptor();
  put_u32(out, desc.size());
  put_bytes(out, desc.data(), desc.size());
  for (const IndexList& group : part.groups())
    for (Index j : group) put_u32(out, j);
}

BlockDictionary read_bdx(std::istream& in) {
  using namespace binary;
  expect_magic(in, "BDX1");
  const Index n = get_u32(in, "n");
  const Index p = get_u32(in, "p");
  const Index G = get_u32(in, "G");
  require(n > 0 && p > 0 && G > 0 && G <= p, ErrorCode::format_error, "BDX1: invalid header");
  IndexList sizes(G);
  Index total = 0;
  for (Index& s : sizes) {
    s = get_u32(in, "group sizes");
    total += s;
  }
  require(total == p, ErrorCode::format_error, "BDX1: group sizes do not sum to p");
  Matrix m(n, p);
  get_f64_array(in, m.data(), n * p, "matrix entries");

  const Index desc_len = get_u32(in, "descriptor length");
  std::string desc(desc_len, '\0');
  get_bytes(in, desc.data(), desc_len, "descriptor");

  std::vector<IndexList> groups(G);
  for (Index g = 0; g < G; ++g) {
    groups[g].resize(sizes[g]);
    for (Index& j : groups[g]) j = get_u32(in, "column indices");
  }
  GroupPartition partition = GroupPartition::from_sets(std::move(groups), p);

  StructurePtr structure = parse_descriptor(desc);
  if (structure) {
    require(structure->rows == n && structure->cols == p, ErrorCode::format_error,
            "BDX1: descriptor '" + desc + "' does not match the stored shape");
    const Matrix rebuilt = materialize(*structure);
    const double diff = (rebuilt - m).cwiseAbs().maxCoeff();
    require(diff <= 1e-12, ErrorCode::format_error,
            "BDX1: entries disagree with descriptor '" + desc + "'");
    return BlockDictionary(std::move(structure), std::move(partition));
  }
  return BlockDictionary::from_dense_unchecked(std::move(m), std::move(partition));
}

void save_bdx(const std::filesystem::path& path, const BlockDictionary& x) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::io_failure, "cannot open " + path.string());
  write_bdx(out, x);
}

BlockDictionary load_bdx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io_failure, "cannot open " + path.string());
  return read_bdx(in);
}

}  // namespace glasso
