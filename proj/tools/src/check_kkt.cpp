#include "sqvar_cli/check_kkt.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sqvar/optcert.hpp"

namespace sqvar::cli {

namespace {

using nlohmann::json;

Vector to_vector(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::InvalidArgument, std::string(what) + " must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(ErrorCode::InvalidArgument, std::string(what) + " must hold numbers");
    v[Index(i)] = j[i].get<double>();
  }
  return v;
}

Matrix to_matrix(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::InvalidArgument, std::string(what) + " must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows ? static_cast<Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Vector r = to_vector(j[std::size_t(i)], what);
    require(r.size() == cols, ErrorCode::DimensionMismatch, "matrix rows differ in length");
    m.row(i) = r.transpose();
  }
  return m;
}

void put(Table& t, const std::string& name, double value) { t.add({name, value}); }

void check_qp(const json& doc, const json& prob, Table& t) {
  const Matrix q = to_matrix(prob.at("q"), "q");
  const Vector b = to_vector(prob.at("b"), "b");
  require(q.rows() == q.cols() && q.rows() == b.size(), ErrorCode::DimensionMismatch,
          "q must be square and match b");
  const double tol = doc.value("tol", optcert::kDefaultEigTol);
  if (doc.contains("x")) {
    const Vector x = to_vector(doc["x"], "x");
    require(x.size() == b.size(), ErrorCode::DimensionMismatch, "x size");
    const Vector g = q * x + b;
    put(t, "bc.prox_residual", optcert::bc_prox_residual(g, x));
    try {
      const optcert::BcWeak2nReport r = optcert::bc_weak_2n_check(x, g, q, tol);
      put(t, "bc.min_eig", r.min_eig);
      put(t, "bc.is_weak_2n", r.is_weak_2n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotFirstOrder) throw;
      put(t, "bc.is_weak_2n", 0.0);
    }
  }
  if (doc.contains("v")) {
    const Vector v = to_vector(doc["v"], "v");
    require(v.size() == b.size(), ErrorCode::DimensionMismatch, "v size");
    const auto grad = [&](const Vector& x) -> Vector { return q * x + b; };
    const auto hess = [&](const Vector&) -> Matrix { return q; };
    const optcert::Dss2nReport r = optcert::dss_bc_2n_check(grad, hess, v, tol);
    put(t, "dss.grad_norm", r.grad_norm);
    put(t, "dss.min_eig", r.min_eig);
    put(t, "dss.is_first_order", r.is_first_order);
    put(t, "dss.is_2n", r.is_2n);
    put(t, "dss.is_2s_strict", r.is_2s_strict);
  }
}

void check_nlp(const json& doc, const json& prob, Table& t) {
  optcert::NlpPoint p;
  p.x = to_vector(doc.at("x"), "x");
  p.s = to_vector(doc.at("s"), "s");
  p.grad_f = to_vector(prob.at("grad_f"), "grad_f");
  p.c_val = to_vector(prob.at("c"), "c");
  p.jac = to_matrix(prob.at("jac"), "jac");
  p.hess_l = to_matrix(prob.at("hess_l"), "hess_l");
  const Index n = p.x.size(), m = p.c_val.size();
  require(p.grad_f.size() == n && p.s.size() == m && p.jac.rows() == m && p.jac.cols() == n &&
              p.hess_l.rows() == n && p.hess_l.cols() == n,
          ErrorCode::DimensionMismatch, "nlp point: inconsistent sizes");

  const auto put_nlp = [&](const std::string& prefix, const optcert::Nlp2nMeasures& r) {
    put(t, prefix + "eps_foc", r.eps_foc);
    put(t, prefix + "eps_pf", r.eps_pf);
    put(t, prefix + "eps_cs", r.eps_cs);
    put(t, prefix + "eps_pd", r.eps_pd);
    put(t, prefix + "eps_soc", r.eps_soc);
  };
  const bool has_zeta = doc.contains("zeta");
  const double zeta = doc.value("zeta", 0.0);
  if (has_zeta) {
    const Vector a = doc.contains("a") ? to_vector(doc["a"], "a") : Vector(Vector::Zero(m));
    put_nlp("nlp.", optcert::nlp_approx_2n_measure(p, a, zeta));
  }
  if (doc.contains("v")) {
    const Vector v = to_vector(doc["v"], "v");
    const optcert::Ssv2nMeasures s = optcert::ssv_approx_2n_measure(p, v);
    put(t, "ssv.eps1", s.eps1);
    put(t, "ssv.eps2", s.eps2);
    put(t, "ssv.eps3", s.eps3);
    if (has_zeta) {
      try {
        put_nlp("transfer.", optcert::transfer_ssv_measures(p, s, zeta));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OutOfRange && e.code() != ErrorCode::HypothesisViolated) throw;
        t.add({"transfer.skipped", std::string(e.what())});
      }
    }
  }
}

}  // namespace

Table check_kkt_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("point file: ") + e.what());
  }
  Table t;
  t.columns = {"measure", "value"};
  try {
    const json& prob = doc.at("problem");
    const std::string type = prob.at("type").get<std::string>();
    if (type == "qp") check_qp(doc, prob, t);
    else if (type == "nlp") check_nlp(doc, prob, t);
    else fail(ErrorCode::InvalidArgument, "problem.type must be qp or nlp");
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("point file: ") + e.what());
  }
  return t;
}

Table check_kkt_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return check_kkt_json(ss.str());
}

}  // namespace sqvar::cli
