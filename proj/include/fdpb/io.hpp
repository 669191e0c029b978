#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fdpb/algebra.hpp"
#include "fdpb/chain.hpp"
#include "fdpb/matrix.hpp"
#include "fdpb/metric.hpp"
#include "fdpb/models.hpp"
#include "fdpb/report.hpp"

namespace fdpb::io {

using nlohmann::json;

// Matrix object: {"dim": n, "re": [[...]], "im": [[...]]}, row-major, both
// arrays mandatory even when zero.
inline json to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row_re = json::array();
    json row_im = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row_re.push_back(m(i, j).real());
      row_im.push_back(m(i, j).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline json to_json(const Vector& v) {
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw std::invalid_argument("matrix JSON must carry dim, re, and im");
  }
  const Index dim = j.at("dim").get<Index>();
  if (dim <= 0) throw std::invalid_argument("matrix JSON: dim must be positive");
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (Index(re.size()) != dim || Index(im.size()) != dim) {
    throw std::invalid_argument("matrix JSON: row count disagrees with dim");
  }
  Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const json& row_re = re.at(std::size_t(i));
    const json& row_im = im.at(std::size_t(i));
    if (Index(row_re.size()) != dim || Index(row_im.size()) != dim) {
      throw std::invalid_argument("matrix JSON: column count disagrees with dim");
    }
    for (Index k = 0; k < dim; ++k) {
      m(i, k) = Complex(row_re.at(std::size_t(k)).get<double>(),
                        row_im.at(std::size_t(k)).get<double>());
    }
  }
  if (!all_finite(m)) throw std::invalid_argument("matrix JSON: non-finite entry");
  return m;
}

inline Vector vector_from_json(const json& j) {
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (re.size() != im.size()) {
    throw std::invalid_argument("vector JSON: re/im length mismatch");
  }
  Vector v(Index(re.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v(i) = Complex(re.at(std::size_t(i)).get<double>(),
                   im.at(std::size_t(i)).get<double>());
  }
  return v;
}

struct RepresentationMeta {
  std::string generator = "unknown";
  json params = json::object();
  std::optional<std::int64_t> seed;
};

struct RepresentationFile {
  Representation rep;
  RepresentationMeta meta;
};

inline json to_json(const Representation& rep, const RepresentationMeta& meta) {
  json meta_json{{"generator", meta.generator},
                 {"params", meta.params},
                 {"seed", meta.seed ? json(*meta.seed) : json(nullptr)}};
  return json{{"n", rep.n},
              {"a", to_json(rep.a)},
              {"b", to_json(rep.b)},
              {"k", to_json(rep.k)},
              {"meta", std::move(meta_json)}};
}

inline RepresentationFile representation_from_json(const json& j) {
  RepresentationFile file;
  file.rep.n = j.at("n").get<Index>();
  file.rep.a = matrix_from_json(j.at("a"));
  file.rep.b = matrix_from_json(j.at("b"));
  file.rep.k = matrix_from_json(j.at("k"));
  if (file.rep.a.rows() != file.rep.n || file.rep.b.rows() != file.rep.n ||
      file.rep.k.rows() != file.rep.n) {
    throw std::invalid_argument("representation JSON: matrix dims disagree with n");
  }
  if (j.contains("meta")) {
    const json& meta = j.at("meta");
    file.meta.generator = meta.value("generator", "unknown");
    file.meta.params = meta.value("params", json::object());
    if (meta.contains("seed") && !meta.at("seed").is_null()) {
      file.meta.seed = meta.at("seed").get<std::int64_t>();
    }
  }
  return file;
}

inline json to_json(const Label& lab) {
  return json{{"h2", lab.h2}, {"k", lab.kprime}};
}

inline json to_json(const BiorthogonalSystem& sys) {
  json labels = json::array();
  json phis = json::array();
  json psis = json::array();
  for (std::size_t i = 0; i < sys.labels.size(); ++i) {
    labels.push_back(to_json(sys.labels[i]));
    phis.push_back(to_json(sys.phis[i]));
    psis.push_back(to_json(sys.psis[i]));
  }
  return json{{"n", sys.n},     {"labels", std::move(labels)},
              {"phis", std::move(phis)}, {"psis", std::move(psis)},
              {"nus", sys.nus}, {"mus", sys.mus}};
}

inline BiorthogonalSystem system_from_json(const json& j) {
  BiorthogonalSystem sys;
  sys.n = j.at("n").get<Index>();
  for (const json& lab : j.at("labels")) {
    sys.labels.push_back({lab.at("h2").get<int>(), lab.at("k").get<int>()});
  }
  for (const json& v : j.at("phis")) sys.phis.push_back(vector_from_json(v));
  for (const json& v : j.at("psis")) sys.psis.push_back(vector_from_json(v));
  sys.nus = j.at("nus").get<std::vector<double>>();
  sys.mus = j.at("mus").get<std::vector<double>>();
  if (Index(sys.labels.size()) != sys.n || Index(sys.phis.size()) != sys.n ||
      Index(sys.psis.size()) != sys.n ||
      Index(sys.nus.size()) + 1 != sys.n || Index(sys.mus.size()) + 1 != sys.n) {
    throw std::invalid_argument("system JSON: field lengths disagree with n");
  }
  return sys;
}

inline json to_json(const HermitianSystem& hs) {
  json e = json::array();
  for (const Vector& v : hs.e_basis) e.push_back(to_json(v));
  return json{{"n", hs.n},
              {"c", to_json(hs.c)},
              {"K", to_json(hs.big_k)},
              {"H0", to_json(hs.h0)},
              {"e", std::move(e)}};
}

inline json to_json(const SpectrumReport& report) {
  json computed = json::array();
  for (const Complex& v : report.computed) {
    computed.push_back(json{{"re", v.real()}, {"im", v.imag()}});
  }
  return json{{"theta", report.theta},
              {"omega", report.omega},
              {"computed", std::move(computed)},
              {"match_scaled", report.match_scaled},
              {"match_unscaled", report.match_unscaled},
              {"max_imag", report.max_imag},
              {"intertwiner_residual", report.intertwiner_residual}};
}

inline json to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const Check& c : report.checks) {
    checks.push_back(json{{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
  }
  return json{{"checks", std::move(checks)}, {"pass", report.passed()}};
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace fdpb::io
