#include "uqkf/io.hpp"

#include "uqkf/moments.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace uqkf {

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Vector vector_from_json(const Json& j) {
  require(j.is_array(), "expected a JSON array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
  return v;
}

Matrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), "expected a nonempty JSON array of rows");
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(static_cast<Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(static_cast<Index>(j[i].size()) == cols, "ragged matrix rows");
    m.row(static_cast<Index>(i)) = vector_from_json(j[i]).transpose();
  }
  return m;
}

Json pce_to_json(const PceExpansion& pce) {
  Json j;
  j["germ"] = Json::array();
  for (auto f : pce.germ()) j["germ"].push_back(to_string(f));
  j["indices"] = pce.index_set().indices();
  j["coeffs"] = to_json(Matrix(pce.coeffs().transpose()));
  return j;
}

PceExpansion pce_from_json(const Json& j) {
  GermSpec germ;
  for (const auto& f : j.at("germ")) germ.push_back(germ_family_from_string(f.get<std::string>()));
  auto indices = j.at("indices").get<std::vector<MultiIndex>>();
  MultiIndexSet set(static_cast<Index>(germ.size()), std::move(indices));
  const Matrix rows = matrix_from_json(j.at("coeffs"));
  require(rows.rows() == set.size(), "one coefficient row per multi-index");
  // Rows follow the file's index order; the set may have reordered them.
  Matrix coeffs(rows.cols(), set.size());
  const auto& listed = j.at("indices");
  for (std::size_t i = 0; i < listed.size(); ++i)
    coeffs.col(set.find(listed[i].get<MultiIndex>())) = rows.row(static_cast<Index>(i)).transpose();
  return PceExpansion(std::move(germ), std::move(set), std::move(coeffs));
}

Json posterior_summary_to_json(const PosteriorSummary& s) {
  Json j;
  j["mean"] = to_json(s.mean);
  j["cov"] = to_json(s.cov);
  j["map"] = to_json(s.map);
  j["log_gamma"] = s.log_gamma;
  j["gamma"] = s.gamma;
  j["axes"] = Json::array();
  for (const auto& a : s.axes) j["axes"].push_back({{"min", a.min}, {"max", a.max}, {"count", a.count}});
  j["refinements"] = s.refinements;
  j["converged"] = s.converged;
  return j;
}

Json record_to_json(const AssimilationRecord& r) {
  Json j;
  j["step"] = r.step;
  j["data"] = to_json(r.data);
  j["gain"] = to_json(r.gain.K);
  j["gain_jittered"] = r.gain.jittered;
  j["forecast_mean"] = to_json(r.forecast.mean());
  j["analysis_mean"] = to_json(r.analysis.mean());
  j["analysis_cov"] = to_json(Matrix(empirical_covariance(r.analysis.members())));
  return j;
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return s;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

namespace {

void comment_line(std::string& s, const std::string& comment) {
  if (!comment.empty()) s += "# " + comment + "\n";
}

}  // namespace

void write_ensemble_csv(const std::filesystem::path& path, const Ensemble& e, const std::string& comment) {
  std::string s;
  comment_line(s, comment);
  for (Index k = 0; k < e.dim(); ++k) s += (k ? ",dim" : "dim") + std::to_string(k);
  s += "\n";
  for (Index j = 0; j < e.size(); ++j) {
    for (Index k = 0; k < e.dim(); ++k) {
      if (k) s += ',';
      s += format_double(e.members()(k, j));
    }
    s += '\n';
  }
  write_text(path, s);
}

Ensemble read_ensemble_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "ensemble CSV has no members");
  Matrix m(static_cast<Index>(rows[0].size()), static_cast<Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    require(rows[j].size() == rows[0].size(), "ragged ensemble CSV");
    for (std::size_t k = 0; k < rows[j].size(); ++k) m(static_cast<Index>(k), static_cast<Index>(j)) = rows[j][k];
  }
  return Ensemble(std::move(m));
}

void write_grid_csv(const std::filesystem::path& path, const GridDensity& g, const std::string& comment) {
  std::string s;
  comment_line(s, comment);
  for (Index k = 0; k < g.dim(); ++k) s += "x" + std::to_string(k) + ",";
  s += g.log_scale() ? "log_density\n" : "density\n";
  for (Index i = 0; i < g.size(); ++i) {
    const Vector p = g.point(i);
    for (Index k = 0; k < g.dim(); ++k) s += format_double(p(k)) + ",";
    s += format_double(g.values()(i)) + "\n";
  }
  write_text(path, s);

  Json side;
  if (!comment.empty()) side["provenance"] = comment;
  side["log_scale"] = g.log_scale();
  side["axes"] = Json::array();
  for (const auto& a : g.axes()) side["axes"].push_back({{"min", a.min}, {"max", a.max}, {"count", a.count}});
  write_json(path.string() + ".json", side);
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram& h, const std::string& comment) {
  std::string s;
  comment_line(s, comment);
  s += "left,right,count,density\n";
  for (Index b = 0; b < h.counts.size(); ++b)
    s += format_double(h.edges(b)) + "," + format_double(h.edges(b + 1)) + "," + format_double(h.counts(b)) + "," +
         format_double(h.density(b)) + "\n";
  write_text(path, s);
}

}  // namespace uqkf
