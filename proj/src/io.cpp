#include "jacobi/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& expected) {
  throw Error(ErrorKind::Schema, "field '" + field + "': expected " + expected);
}

const Json& member(const Json& j, const std::string& field, const std::string& expected) {
  if (!j.is_object()) schema("<root>", "an object");
  const auto it = j.find(field);
  if (it == j.end()) schema(field, expected + " (missing)");
  return *it;
}

int get_int(const Json& j, const std::string& field) {
  const Json& v = member(j, field, "an integer");
  if (!v.is_number_integer()) schema(field, "an integer");
  return v.get<int>();
}

std::vector<double> get_reals(const Json& j, const std::string& field) {
  const Json& v = member(j, field, "an array of reals");
  if (!v.is_array()) schema(field, "an array of reals");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) schema(field + "[" + std::to_string(i) + "]", "a real number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<cplx> get_complexes(const Json& j, const std::string& field) {
  const Json& v = member(j, field, "an array of [re, im] pairs");
  if (!v.is_array()) schema(field, "an array of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Json& p = v[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      schema(field + "[" + std::to_string(i) + "]", "a [re, im] pair of reals");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

Json complexes(const std::vector<cplx>& v) {
  Json out = Json::array();
  for (const cplx& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

// JSON has no infinity or NaN
Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

JacobiOperator operator_from_json(const Json& j) {
  const int lo = get_int(j, "n_minus");
  const int hi = get_int(j, "n_plus");
  std::vector<double> a = get_reals(j, "a");
  std::vector<double> b = get_reals(j, "b");
  if (hi < lo) schema("n_plus", "an integer >= n_minus");
  if (static_cast<long>(a.size()) != static_cast<long>(hi) - lo) {
    schema("a", "an array of length n_plus - n_minus = " + std::to_string(hi - lo));
  }
  if (static_cast<long>(b.size()) != static_cast<long>(hi) - lo + 1) {
    schema("b", "an array of length n_plus - n_minus + 1 = " + std::to_string(hi - lo + 1));
  }
  return JacobiOperator(lo, hi, std::move(a), std::move(b));
}

Json to_json(const JacobiOperator& op) {
  return {{"n_minus", op.n_minus()}, {"n_plus", op.n_plus()}, {"a", op.a_values()}, {"b", op.b_values()}};
}

Json to_json(const ScatteringData& sd) {
  Json norming = Json::array();
  for (const NormingConstant& nc : sd.norming) {
    norming.push_back({{"z", {nc.z.real(), nc.z.imag()}},
                       {"gamma", nc.gamma},
                       {"mu", nc.mu},
                       {"gamma_residue", nc.gamma_residue}});
  }
  return {{"n_minus", sd.n_minus},
          {"n_plus", sd.n_plus},
          {"A", sd.A},
          {"w", sd.w.coeffs()},
          {"s_minus", sd.s_minus.core.coeffs()},
          {"s_minus_shift", sd.s_minus.shift},
          {"eigenvalues", complexes(sd.eigenvalues.roots)},
          {"resonances", complexes(sd.resonances.roots)},
          {"ambiguous", complexes(sd.ambiguous.roots)},
          {"reflection_zeros", complexes(sd.reflection_zeros.roots)},
          {"half_bound", {{"plus_one", sd.half_bound.plus_one}, {"minus_one", sd.half_bound.minus_one}}},
          {"norming", norming}};
}

RootData root_data_from_json(const Json& j) {
  RootData rd;
  rd.poles = get_complexes(j, "poles");
  rd.zeros = get_complexes(j, "zeros");
  if (j.contains("disk_radius") && !j["disk_radius"].is_null()) {
    if (!j["disk_radius"].is_number()) schema("disk_radius", "a real number or null");
    rd.disk_radius = j["disk_radius"].get<double>();
  }
  return rd;
}

Json to_json(const RootData& rd) {
  return {{"poles", complexes(rd.poles)},
          {"zeros", complexes(rd.zeros)},
          {"disk_radius", rd.disk_radius ? Json(*rd.disk_radius) : Json(nullptr)}};
}

Json to_json(const ReconstructionReport& rep) {
  const ReconstructionResiduals& r = rep.residuals;
  Json j = to_json(rep.op);
  j["b0"] = rep.b0;
  j["A"] = rep.A;
  j["sign_branch"] = std::string(to_string(rep.sign_branch));
  j["residuals"] = {{"imag_part", r.imag_part},
                    {"a2_cross_check", r.a2_cross_check},
                    {"boundary_division", r.boundary_division},
                    {"boundary_constant", r.boundary_constant},
                    {"strip_division", r.strip_division},
                    {"termination", r.termination},
                    {"fit_initial", r.fit_initial},
                    {"fit_final", r.fit_final},
                    {"refine_iterations", r.refine_iterations},
                    {"a_product", r.a_product}};
  return j;
}

Json to_json(const SweepSummary& s) {
  return {{"slope", real(s.slope)}, {"slope_radius", real(s.slope_radius)}, {"C_hat", real(s.C_hat)},
          {"failures", s.failures}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Schema, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace jacobi
