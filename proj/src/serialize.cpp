#include "specsep/serialize.hpp"

#include <stdexcept>

namespace specsep {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Rational& q) { return Json::array({q.numerator(), q.denominator()}); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("rationals are [num, den]");
  const auto den = j[1].get<long long>();
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(j[0].get<long long>(), den);
}

Json to_json(const Domain& d) { return {{"angles", d.angles()}, {"lines", d.lines()}}; }

Domain domain_from_json(const Json& j) {
  return Domain(field(j, "angles").get<std::vector<std::string>>(),
                field(j, "lines").get<std::vector<std::string>>());
}

Json to_json(const Distribution& d) {
  const auto& dom = d.domain();
  Json terms = Json::array();
  for (const auto& t : d.terms()) {
    Json deltas = Json::array();
    for (const auto& f : t.deltas) {
      Json line = nullptr;
      if (f.line >= 0 && f.line_coeff != 0) line = dom.lines()[static_cast<std::size_t>(f.line)];
      deltas.push_back({{"angles", f.angle_coeffs},
                        {"line", line},
                        {"line_coeff", line.is_null() ? 0 : f.line_coeff},
                        {"offset_over_pi", to_json(f.offset_over_pi)}});
    }
    Json cots = Json::array();
    for (int c : t.cots) cots.push_back(dom.angles()[static_cast<std::size_t>(c)]);
    terms.push_back({{"coeff", to_json(t.coeff)}, {"deltas", deltas}, {"cots", cots}, {"expo", t.expo}});
  }
  return {{"domain", to_json(dom)}, {"terms", terms}};
}

Distribution distribution_from_json(const Json& j) {
  Distribution d(domain_from_json(field(j, "domain")));
  const auto& dom = d.domain();
  for (const auto& jt : field(j, "terms")) {
    DistTerm t;
    t.coeff = complex_from_json(field(jt, "coeff"));
    for (const auto& jf : jt.value("deltas", Json::array())) {
      LinearForm f;
      f.angle_coeffs = field(jf, "angles").get<std::vector<int>>();
      if (jf.contains("line") && !jf["line"].is_null()) {
        f.line = dom.line_index(jf["line"].get<std::string>());
        if (f.line < 0) throw std::invalid_argument("delta refers to unknown line coordinate");
        f.line_coeff = jf.value("line_coeff", 1);
      }
      if (jf.contains("offset_over_pi")) f.offset_over_pi = rational_from_json(jf["offset_over_pi"]);
      t.deltas.push_back(std::move(f));
    }
    for (const auto& jc : jt.value("cots", Json::array())) {
      const int idx = dom.angle_index(jc.get<std::string>());
      if (idx < 0) throw std::invalid_argument("cot refers to unknown angle coordinate");
      t.cots.push_back(idx);
    }
    t.expo = jt.value("expo", std::vector<int>{});
    d.add_term(std::move(t));
  }
  return d;
}

Json to_json(const ExpPoly& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json freq = Json::array();
    for (auto f : t.freq) freq.push_back(to_json(f));
    Json lines = Json::array();
    for (const auto& lf : t.lines) {
      Json poly = Json::array();
      for (auto c : lf.poly) poly.push_back(to_json(c));
      lines.push_back({{"poly", poly}, {"rate", to_json(lf.rate)}, {"gauss_width", lf.gauss_width}});
    }
    terms.push_back({{"coeff", to_json(t.coeff)}, {"freq", freq}, {"lines", lines}});
  }
  return {{"domain", to_json(p.domain())}, {"terms", terms}};
}

ExpPoly exppoly_from_json(const Json& j) {
  ExpPoly p(domain_from_json(field(j, "domain")));
  for (const auto& jt : field(j, "terms")) {
    ExpTerm t;
    t.coeff = complex_from_json(field(jt, "coeff"));
    for (const auto& jf : jt.value("freq", Json::array())) t.freq.push_back(complex_from_json(jf));
    for (const auto& jl : jt.value("lines", Json::array())) {
      LineFactor lf;
      if (jl.contains("poly")) {
        lf.poly.clear();
        for (const auto& c : jl["poly"]) lf.poly.push_back(complex_from_json(c));
        if (lf.poly.empty()) lf.poly.push_back(0.0);
      }
      if (jl.contains("rate")) lf.rate = complex_from_json(jl["rate"]);
      lf.gauss_width = jl.value("gauss_width", 0.0);
      if (lf.gauss_width < 0.0) throw std::invalid_argument("gauss_width must be non-negative");
      t.lines.push_back(std::move(lf));
    }
    p.add_term(std::move(t));
  }
  return p;
}

Json to_json(const ThetaKernel& kernel) {
  Json charts = Json::array();
  for (const auto& c : kernel.charts) {
    const auto& w = c.weight;
    charts.push_back({{"k", c.k},
                      {"weight",
                       {{"global_sign", w.global_sign},
                        {"factorial_num", w.factorial_num},
                        {"factorial_den", w.factorial_den},
                        {"chart_sign", w.chart_sign},
                        {"power_of_four", w.power_of_four},
                        {"gamma", to_json(w.gamma)},
                        {"exact", to_json(w.exact())},
                        {"value", w.value()}}},
                      {"distribution", to_json(c.distribution)}});
  }
  return {{"n", kernel.n}, {"r", kernel.r}, {"charts", charts}};
}

}  // namespace specsep
