// Copyright 2026 The magicsquare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "verification.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "errors.hpp"

namespace msq {

namespace {

std::string sci(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", x);
  return buffer;
}

std::string sign_string(const ProductReport &r) {
  std::string out;
  for (Setting s : kAllSettings) {
    if (!out.empty()) out += ' ';
    out += std::string(to_string(s)) + (r.sign(s) > 0 ? ":+" : ":-");
  }
  return out;
}

std::string cell_string(Cell c) { return "(" + std::to_string(c.row + 1) + "," + std::to_string(c.col + 1) + ")"; }

CheckResult check_products(Variant variant) {
  const ProductReport r = product_check(square(variant, Party::Alice));
  bool ok = r.max_residual < kTolerance;
  for (Setting s : kAllSettings) {
    int expected = 1;
    if (variant == Variant::Standard && s == Setting::C3) expected = -1;
    if (variant == Variant::SignedSymmetric && !is_row(s)) expected = -1;
    ok = ok && r.sign(s) == expected;
  }
  return {"products", ok, sign_string(r) + "  residual " + sci(r.max_residual)};
}

CheckResult check_commutation(Variant variant) {
  bool ok = true;
  double worst = 0.0;
  for (Party party : {Party::Alice, Party::Bob}) {
    for (Setting s : kAllSettings) {
      const auto obs = square(variant, party).setting_observables(s);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
          const double n = commutator_norm(obs[i], obs[j]);
          worst = std::max(worst, n);
          ok = ok && commutes(obs[i], obs[j]) && n < kTolerance;
        }
    }
  }
  return {"commutation", ok, "all settings, both parties; max commutator " + sci(worst)};
}

CheckResult check_party_locality(Variant variant) {
  bool ok = true;
  double worst = 0.0;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      const Observable &oa = square(variant, Party::Alice).cell(a / 3, a % 3);
      const Observable &ob = square(variant, Party::Bob).cell(b / 3, b % 3);
      const double n = commutator_norm(oa, ob);
      worst = std::max(worst, n);
      ok = ok && commutes(oa, ob) && n < kTolerance;
    }
  return {"party-locality", ok, "81 alice/bob cell pairs; max commutator " + sci(worst)};
}

CheckResult check_involutions(Variant variant) {
  double worst = 0.0;
  for (Party party : {Party::Alice, Party::Bob})
    for (int k = 0; k < 9; ++k) {
      const Matrix16 m = embed_observable(square(variant, party).cell(k / 3, k % 3));
      worst = std::max(worst, (m - m.adjoint()).cwiseAbs().maxCoeff());
      worst = std::max(worst, (m * m - Matrix16::Identity()).cwiseAbs().maxCoeff());
    }
  return {"hermitian-involution", worst < kTolerance, "max residual " + sci(worst)};
}

CheckResult check_eigenbasis(Variant variant, Setting s) {
  const MagicSquare &sq = square(variant, Party::Alice);
  const SettingEigenbasis basis = simultaneous_eigenbasis(sq, s);
  const auto obs = sq.setting_observables(s);

  double ortho = 0.0;
  double eigen = 0.0;
  double imag = 0.0;
  Matrix4 completeness = Matrix4::Zero();
  for (std::size_t i = 0; i < 4; ++i) {
    const Vector4 &v = basis.vectors[i].coefficients;
    completeness += v * v.adjoint();
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex g = basis.vectors[j].coefficients.dot(v);
      ortho = std::max(ortho, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
    for (std::size_t k = 0; k < 3; ++k)
      eigen = std::max(eigen, (local_matrix(obs[k]) * v - static_cast<double>(value(basis.vectors[i].eigenvalues[k])) * v)
                                  .cwiseAbs()
                                  .maxCoeff());
    imag = std::max(imag, v.imag().cwiseAbs().maxCoeff());
  }
  const double complete = (completeness - Matrix4::Identity()).cwiseAbs().maxCoeff();
  const bool ok = ortho < kTolerance && eigen < kTolerance && complete < kTolerance && imag < kTolerance;
  return {"eigenbasis " + std::string(to_string(s)), ok,
          "gram " + sci(ortho) + "  eigen " + sci(eigen) + "  completeness " + sci(complete) + "  imag " + sci(imag)};
}

CheckResult check_decomposition(Variant variant, Setting s) {
  const DecompositionCheck d = biorthogonal_decomposition_check(s, variant);
  return {"decomposition " + std::string(to_string(s)),
          d.reconstruction_error < kTolerance && d.max_imaginary < kTolerance,
          "reconstruction " + sci(d.reconstruction_error) + "  imag " + sci(d.max_imaginary)};
}

CheckResult check_no_signaling(Variant variant, Setting bob) {
  const double d = no_signaling_check(bob, variant);
  return {"no-signaling " + std::string(to_string(bob)), d < kTolerance, "max deviation " + sci(d)};
}

CheckResult check_triple_order(Variant variant) {
  double worst = 0.0;
  for (Party party : {Party::Alice, Party::Bob})
    for (Setting s : kAllSettings) worst = std::max(worst, triple_order_deviation(s, party, variant));
  return {"triple-order", worst < kTolerance, "6 orderings x 6 settings x 2 parties; max deviation " + sci(worst)};
}

CheckResult check_party_order(Variant variant) {
  double worst = 0.0;
  for (Setting a : kAllSettings)
    for (Setting b : kAllSettings) worst = std::max(worst, party_order_deviation(a, b, variant));
  return {"party-order", worst < kTolerance, "36 setting pairs; max deviation " + sci(worst)};
}

CheckResult check_sign_mask() {
  const MagicSquare literal = MagicSquare::with_mask(Party::Alice, literal_last_row_mask());
  const ProductReport lit = product_check(literal);
  const auto pairs = symmetric_last_row_pairs();
  const SignMask used = square(Variant::SignedSymmetric, Party::Alice).mask();

  std::string found;
  bool used_is_symmetric = false;
  for (const auto &[a, b] : pairs) {
    if (!found.empty()) found += ", ";
    found += cell_string(a) + cell_string(b);
    used_is_symmetric = used_is_symmetric || used == SignMask::of({a, b});
  }
  std::string used_cells;
  for (const Cell &c : used.cells()) used_cells += cell_string(c);

  const std::string detail = "negating last-row cells (3,2)(3,3) gives " + sign_string(lit) +
                             "; last-row pairs giving rows +I and columns -I: " + (found.empty() ? "none" : found) +
                             "; signed variant negates " + used_cells;
  return {"sign-mask", used_is_symmetric, detail};
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

VerifyReport run_verification(Variant variant) {
  VerifyReport report;
  report.variant = variant;
  auto add = [&](auto &&fn) {
    try {
      report.checks.push_back(fn());
    } catch (const Error &e) {
      report.checks.push_back({"error", false, std::string(e.what()) + " " + e.detail()});
    }
  };
  add([&] { return check_products(variant); });
  if (variant == Variant::SignedSymmetric) add([] { return check_sign_mask(); });
  add([&] { return check_commutation(variant); });
  add([&] { return check_party_locality(variant); });
  add([&] { return check_involutions(variant); });
  for (Setting s : kAllSettings) add([&] { return check_eigenbasis(variant, s); });
  for (Setting s : kAllSettings) add([&] { return check_decomposition(variant, s); });
  for (Setting s : kAllSettings) add([&] { return check_no_signaling(variant, s); });
  add([&] { return check_triple_order(variant); });
  add([&] { return check_party_order(variant); });
  return report;
}

Json verify_to_json(const VerifyReport &report) {
  Json checks = Json::array();
  for (const CheckResult &c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"variant", to_string(report.variant)}, {"all_passed", report.all_passed()}, {"checks", std::move(checks)}};
}

std::string verify_to_text(const VerifyReport &report) {
  std::ostringstream os;
  os << "variant " << to_string(report.variant) << "\n";
  for (const CheckResult &c : report.checks) {
    char name[32];
    std::snprintf(name, sizeof name, "%-22s", c.name.c_str());
    os << (c.passed ? "PASS  " : "FAIL  ") << name << c.detail << "\n";
  }
  os << (report.all_passed() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

Json eigen_to_json(Variant variant) {
  Json settings = Json::array();
  for (Setting s : kAllSettings) {
    const SettingEigenbasis basis = simultaneous_eigenbasis(square(variant, Party::Alice), s);
    Json vectors = Json::array();
    for (const EigenVector &v : basis.vectors) {
      Json coefficients = Json::array();
      for (Eigen::Index k = 0; k < 4; ++k) coefficients.push_back({v.coefficients(k).real(), v.coefficients(k).imag()});
      vectors.push_back({{"eigenvalues", {value(v.eigenvalues[0]), value(v.eigenvalues[1]), value(v.eigenvalues[2])}},
                         {"colors", triple_label({color_of(v.eigenvalues[0]), color_of(v.eigenvalues[1]),
                                                  color_of(v.eigenvalues[2])})},
                         {"coefficients", std::move(coefficients)}});
    }
    const DecompositionCheck d = biorthogonal_decomposition_check(s, variant);
    settings.push_back({{"setting", to_string(s)},
                        {"vectors", std::move(vectors)},
                        {"reconstruction_error", d.reconstruction_error},
                        {"max_imaginary", d.max_imaginary}});
  }
  return {{"variant", to_string(variant)}, {"basis_order", "|00>, |01>, |10>, |11>"}, {"settings", std::move(settings)}};
}

std::string eigen_to_text(Variant variant) {
  std::ostringstream os;
  os << "variant " << to_string(variant) << "  coefficients (a, b, c, d) on |00>, |01>, |10>, |11>\n";
  for (Setting s : kAllSettings) {
    const SettingEigenbasis basis = simultaneous_eigenbasis(square(variant, Party::Alice), s);
    const DecompositionCheck d = biorthogonal_decomposition_check(s, variant);
    os << "\n" << to_string(s) << "  reconstruction " << sci(d.reconstruction_error) << "  imag "
       << sci(d.max_imaginary) << "\n";
    for (const EigenVector &v : basis.vectors) {
      os << "  " << triple_label({color_of(v.eigenvalues[0]), color_of(v.eigenvalues[1]), color_of(v.eigenvalues[2])})
         << "  (";
      for (Eigen::Index k = 0; k < 4; ++k) {
        char buffer[24];
        std::snprintf(buffer, sizeof buffer, "%+.4f", v.coefficients(k).real() + 0.0);
        os << (k ? ", " : "") << buffer;
      }
      os << ")\n";
    }
  }
  return os.str();
}

ClassicalSummary classical_summary(Variant variant) {
  ClassicalSummary s;
  s.variant = variant;
  s.census = enumerate_colorings(variant);
  s.three_by_three = classical_game_value(Game::ThreeByThree, variant);
  s.six_by_six = classical_game_value(Game::SixBySix, variant);
  return s;
}

Json classical_to_json(const ClassicalSummary &summary) {
  return {{"variant", to_string(summary.variant)},
          {"colorings", census_to_json(summary.census)},
          {"games", {game_value_to_json(summary.three_by_three), game_value_to_json(summary.six_by_six)}}};
}

std::string classical_to_text(const ClassicalSummary &summary) {
  std::ostringstream os;
  const ColoringCensus &c = summary.census;
  os << "variant " << to_string(summary.variant) << "\n";
  os << c.total << " colorings, " << c.fully_satisfying << " satisfy all constraints, max satisfied "
     << c.max_satisfied << "\n";
  os << "satisfied-count histogram:";
  for (std::size_t k = 0; k < c.histogram.size(); ++k) os << " " << k << ":" << c.histogram[k];
  os << "\n";
  for (const GameValueReport *g : {&summary.three_by_three, &summary.six_by_six}) {
    os << to_string(g->game) << " game: classical " << g->classical_value.str() << ", quantum "
       << g->quantum_value.display() << "  (" << g->optimal_strategy_count << " optimal strategy pairs)\n";
  }
  return os.str();
}

}  // namespace msq
