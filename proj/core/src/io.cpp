#include "osmm/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace osmm {

namespace {

std::map<std::string, std::string> parse_header(const std::string& line,
                                                const std::vector<std::string>& required,
                                                const std::vector<std::string>& optional) {
  std::map<std::string, std::string> out;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 > token.size())
      throw input_error("bad header token '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (value.empty()) throw input_error("empty header value for '" + key + "'");
    bool known = false;
    for (const auto& k : required) known = known || k == key;
    for (const auto& k : optional) known = known || k == key;
    if (!known) throw input_error("unknown header key '" + key + "'");
    if (!out.emplace(key, value).second) throw input_error("repeated header key '" + key + "'");
  }
  for (const auto& k : required) {
    if (out.find(k) == out.end()) throw input_error("missing header key '" + k + "'");
  }
  return out;
}

i64 parse_count(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw input_error(std::string("bad ") + what + " '" + text + "'");
  if (text.size() > 18) throw input_error(std::string(what) + " out of range '" + text + "'");
  return std::stoll(text);
}

struct ParsedBody {
  RingContext ctx = RingContext::integers();
  i64 rows = 0, cols = 0;
  std::vector<std::vector<SvEntry>> columns;
};

ParsedBody parse_matrix_body(std::istream& in, const std::map<std::string, std::string>& header) {
  ParsedBody body;
  body.ctx = RingContext::from_tag(header.at("ring"));
  body.rows = parse_count(header.at("rows"), "row count");
  body.cols = parse_count(header.at("cols"), "column count");
  const i64 nnz = parse_count(header.at("nnz"), "entry count");
  body.columns.assign(static_cast<std::size_t>(body.cols), {});

  std::string line;
  i64 seen = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string is, js, vs, extra;
    if (!(ls >> is >> js >> vs)) throw input_error("bad entry line '" + line + "'");
    if (ls >> extra) throw input_error("trailing tokens on entry line '" + line + "'");
    const i64 i = parse_count(is, "row index");
    const i64 j = parse_count(js, "column index");
    if (i < 1 || i > body.rows) throw input_error("row index out of range on '" + line + "'");
    if (j < 1 || j > body.cols) throw input_error("column index out of range on '" + line + "'");
    RingElement v = body.ctx.parse(vs);
    if (body.ctx.is_zero(v)) throw input_error("explicit zero entry on '" + line + "'");
    body.columns[static_cast<std::size_t>(j - 1)].push_back(SvEntry{i - 1, std::move(v)});
    ++seen;
  }
  if (seen != nnz)
    throw input_error("entry count mismatch: header says " + std::to_string(nnz) + ", found " +
                      std::to_string(seen));
  return body;
}

SparseMat assemble(ParsedBody body) {
  SparseMat m(body.ctx, body.rows, body.cols);
  for (i64 j = 0; j < body.cols; ++j) {
    m.set_col(j, SparseVec::from_entries(body.ctx, body.rows,
                                         std::move(body.columns[static_cast<std::size_t>(j)]),
                                         /*already_sorted=*/false));
  }
  return m;
}

std::string first_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw input_error("empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

template <typename T, typename Loader>
T load_from_file(const std::string& path, Loader loader) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  return loader(in);
}

template <typename T, typename Saver>
void save_to_file(const T& value, const std::string& path, Saver saver) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  saver(value, out);
  if (!out) throw input_error("write failed for '" + path + "'");
}

}  // namespace

SparseMat load_matrix(std::istream& in) {
  const auto header = parse_header(first_line(in), {"ring", "rows", "cols", "nnz"}, {});
  return assemble(parse_matrix_body(in, header));
}

void save_matrix(const SparseMat& m, std::ostream& out) {
  out << "ring=" << m.context().tag() << " rows=" << m.rows() << " cols=" << m.cols()
      << " nnz=" << m.nnz() << "\n";
  for (i64 j = 0; j < m.cols(); ++j) {
    for (const SvEntry& e : m.col(j).entries()) {
      out << (e.idx + 1) << " " << (j + 1) << " " << m.context().to_string(e.val) << "\n";
    }
  }
}

SparseVec load_vector(std::istream& in) {
  SparseMat m = load_matrix(in);
  if (m.cols() != 1) throw input_error("expected a single-column vector file");
  return m.col(0);
}

void save_vector(const SparseVec& v, std::ostream& out) {
  save_matrix(SparseMat::from_columns(v.context(), v.length(), {v}), out);
}

Measurement load_measurement(std::istream& in) {
  const auto header =
      parse_header(first_line(in), {"ring", "rows", "cols", "nnz", "blocks", "bits"}, {});
  const i64 blocks = parse_count(header.at("blocks"), "block count");
  const i64 bits = parse_count(header.at("bits"), "bit row count");
  if (blocks < 1 || bits < 1 || bits > 62) throw input_error("bad measurement layout");
  SparseMat m = assemble(parse_matrix_body(in, header));
  if (m.cols() != 1) throw input_error("expected a single-column measurement file");
  return Measurement::from_vector(m.col(0), blocks, static_cast<u32>(bits));
}

void save_measurement(const Measurement& z, std::ostream& out) {
  const SparseVec& v = z.as_vector();
  out << "ring=" << v.context().tag() << " rows=" << v.length() << " cols=1 nnz=" << v.nnz()
      << " blocks=" << z.block_count() << " bits=" << z.bit_rows() << "\n";
  for (const SvEntry& e : v.entries()) {
    out << (e.idx + 1) << " 1 " << v.context().to_string(e.val) << "\n";
  }
}

BipartiteGraph load_graph(std::istream& in) {
  const auto header = parse_header(first_line(in), {"left", "right", "d"}, {});
  BipartiteGraph g;
  g.left = parse_count(header.at("left"), "left size");
  g.right = parse_count(header.at("right"), "right size");
  const i64 d = parse_count(header.at("d"), "degree");
  if (g.left < 1 || g.right < 1 || d < 1 || d > g.right) throw input_error("bad graph header");
  g.degree = static_cast<u32>(d);
  g.adj.resize(static_cast<std::size_t>(g.left));
  std::string line;
  i64 v = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (v >= g.left) throw input_error("more adjacency lines than left vertices");
    std::istringstream ls(line);
    std::string tok;
    auto& nbrs = g.adj[static_cast<std::size_t>(v)];
    while (ls >> tok) {
      const i64 nb = parse_count(tok, "neighbor index");
      if (nb < 1 || nb > g.right) throw input_error("neighbor out of range on '" + line + "'");
      nbrs.push_back(nb - 1);
    }
    if (static_cast<i64>(nbrs.size()) != d)
      throw input_error("left vertex " + std::to_string(v + 1) + " does not have exactly " +
                        std::to_string(d) + " neighbors");
    std::sort(nbrs.begin(), nbrs.end());
    for (std::size_t i = 1; i < nbrs.size(); ++i) {
      if (nbrs[i] == nbrs[i - 1]) throw input_error("repeated neighbor on '" + line + "'");
    }
    ++v;
  }
  if (v != g.left) throw input_error("fewer adjacency lines than left vertices");
  g.check_valid();
  return g;
}

void save_graph(const BipartiteGraph& g, std::ostream& out) {
  out << "left=" << g.left << " right=" << g.right << " d=" << g.degree << "\n";
  for (const auto& nbrs : g.adj) {
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      out << (i == 0 ? "" : " ") << (nbrs[i] + 1);
    }
    out << "\n";
  }
}

SparseMat load_matrix_file(const std::string& path) {
  return load_from_file<SparseMat>(path, [](std::istream& in) { return load_matrix(in); });
}
void save_matrix_file(const SparseMat& m, const std::string& path) {
  save_to_file(m, path, [](const SparseMat& v, std::ostream& out) { save_matrix(v, out); });
}
SparseVec load_vector_file(const std::string& path) {
  return load_from_file<SparseVec>(path, [](std::istream& in) { return load_vector(in); });
}
void save_vector_file(const SparseVec& v, const std::string& path) {
  save_to_file(v, path, [](const SparseVec& x, std::ostream& out) { save_vector(x, out); });
}
Measurement load_measurement_file(const std::string& path) {
  return load_from_file<Measurement>(path, [](std::istream& in) { return load_measurement(in); });
}
void save_measurement_file(const Measurement& z, const std::string& path) {
  save_to_file(z, path, [](const Measurement& v, std::ostream& out) { save_measurement(v, out); });
}
BipartiteGraph load_graph_file(const std::string& path) {
  return load_from_file<BipartiteGraph>(path, [](std::istream& in) { return load_graph(in); });
}
void save_graph_file(const BipartiteGraph& g, const std::string& path) {
  save_to_file(g, path, [](const BipartiteGraph& v, std::ostream& out) { save_graph(v, out); });
}

}  // namespace osmm
