#include "qcschur/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "qcschur/reduction.hpp"

namespace qcs {

namespace {

using std::numbers::pi;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

class Runner {
public:
  explicit Runner(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  // fn returns (passed, detail)
  void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    CheckResult r{suite_, name, false, ""};
    try {
      auto [ok, detail] = fn();
      r.passed = ok;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    out_.push_back(std::move(r));
  }

private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

constexpr Subgroup kSubgroups[] = {Subgroup::T, Subgroup::D10, Subgroup::D6};

void groups_suite(const ConstantTables& tables, std::vector<CheckResult>& out) {
  Runner run("groups", out);
  run.check("order_I", [&] {
    auto g = icosahedral_group(tables);
    return std::pair{g.order() == 60, "order " + std::to_string(g.order())};
  });
  run.check("presentation_I", [&] {
    return std::pair{verify_presentation(icosahedral_group(tables)), std::string("(2,3,5)")};
  });
  for (Subgroup s : kSubgroups) {
    const std::string n = to_string(s);
    const std::size_t expected = s == Subgroup::T ? 12 : s == Subgroup::D10 ? 10 : 6;
    run.check("order_" + n, [&] {
      auto g = subgroup_group(s, tables);
      return std::pair{g.order() == expected, "order " + std::to_string(g.order())};
    });
    run.check("presentation_" + n, [&] {
      return std::pair{verify_presentation(subgroup_group(s, tables)), std::string()};
    });
    run.check("order_I_" + n, [&] {
      auto g = partner_group(s, tables);
      return std::pair{g.order() == 60, "order " + std::to_string(g.order())};
    });
    run.check("presentation_I_" + n, [&] {
      return std::pair{verify_presentation(partner_group(s, tables)), std::string("(2,3,5)")};
    });
    run.check("intersection_" + n, [&] {
      auto x = intersect(icosahedral_group(tables), partner_group(s, tables));
      auto g = subgroup_group(s, tables);
      return std::pair{x.elements == g.elements, "|I n I_" + n + "| = " + std::to_string(x.order())};
    });
  }
}

void reduction_suite(const ConstantTables& tables, std::vector<CheckResult>& out) {
  Runner run("reduction", out);
  run.check("frameCheck", [&] { return std::pair{frame_check(tables.frame), std::string("R exact")}; });
  run.check("reduce_I", [&] {
    ReductionFrame frame(tables.frame);
    auto d = reduce_rep(frame, icosahedral_group(tables));
    bool ok = d.off_block_residual == 0.0;
    for (int i = 0; i < 2; ++i)
      ok = ok && (*d.exact_top)[i] == tables.rho3[i] && (*d.exact_bottom)[i] == tables.rho3_prime[i];
    return std::pair{ok, "residual " + sci(d.off_block_residual)};
  });
  run.check("faithful_blocks_I", [&] {
    ReductionFrame frame(tables.frame);
    auto d = reduce_rep(frame, icosahedral_group(tables));
    auto a = close_group(d.top).size(), b = close_group(d.bottom).size();
    return std::pair{a == 60 && b == 60, std::to_string(a) + "/" + std::to_string(b)};
  });
  run.check("identify_rho3", [&] {
    auto a = identify_irrep(std::span<const GoldenMatrix>(tables.rho3));
    auto b = identify_irrep(std::span<const GoldenMatrix>(tables.rho3_prime));
    return std::pair{a == IrrepLabel::T1 && b == IrrepLabel::T2, to_string(a) + " + " + to_string(b)};
  });
  for (Subgroup s : kSubgroups) {
    const std::string n = to_string(s);
    run.check("reduce_" + n, [&] {
      ReductionFrame frame(tables.frame);
      auto d = reduce_rep(frame, subgroup_group(s, tables));
      const auto& st = tables.subgroup(s);
      bool ok = d.off_block_residual == 0.0;
      for (int i = 0; i < 2; ++i)
        ok = ok && (*d.exact_top)[i] == st.block1[i] && (*d.exact_bottom)[i] == st.block2[i];
      return std::pair{ok, "residual " + sci(d.off_block_residual)};
    });
    run.check("partner_not_reduced_" + n, [&] {
      ReductionFrame frame(tables.frame);
      auto d = reduce_rep(frame, partner_group(s, tables));
      return std::pair{d.off_block_residual > 0.1, "residual " + sci(d.off_block_residual)};
    });
    run.check("reducer_orthogonal_" + n, [&] {
      const auto& st = tables.subgroup(s);
      double e = std::max(max_abs(st.reducer1 * st.reducer1.transpose() - Mat3::Identity()),
                          max_abs(st.reducer2 * st.reducer2.transpose() - Mat3::Identity()));
      if (s == Subgroup::T)
        return std::pair{frame_check(tables.tetrahedral_q), std::string("Q exact")};
      return std::pair{e < 1e-12, "max error " + sci(e)};
    });
    run.check("reducer_pattern_" + n, [&] {
      ReductionFrame frame(tables.frame);
      auto d = apply_subgroup_reducer(make_subgroup_reducer(s, tables),
                                      reduce_rep(frame, subgroup_group(s, tables)));
      return std::pair{true, "pattern residual " + sci(d.pattern_residual)};
    });
    run.check("identify_blocks_" + n, [&] {
      const auto& st = tables.subgroup(s);
      auto a = identify_irrep(std::span<const GoldenMatrix>(st.block1));
      auto b = identify_irrep(std::span<const GoldenMatrix>(st.block2));
      bool ok = s == Subgroup::T    ? a == IrrepLabel::Tetrahedral && b == IrrepLabel::Tetrahedral
                : s == Subgroup::D10 ? a == IrrepLabel::A2_E1 && b == IrrepLabel::A2_E2
                                     : a == IrrepLabel::A2_E && b == IrrepLabel::A2_E;
      return std::pair{ok, to_string(a) + " + " + to_string(b)};
    });
  }
}

void centralizer_suite(const ConstantTables& tables, std::vector<CheckResult>& out) {
  Runner run("centralizer", out);
  for (Subgroup s : kSubgroups) {
    const std::string n = to_string(s);
    run.check("centralizer_" + n, [&] {
      auto f = SchurFamily::make(s, tables);
      std::mt19937_64 rng(12345);
      std::uniform_real_distribution<double> u(-pi, pi);
      auto sample = [&] {
        return f.arity() == 1 ? AngleParameter{u(rng)} : AngleParameter{u(rng), u(rng)};
      };
      double comm = 0.0, det = 0.0, law = 0.0;
      for (int i = 0; i < 100; ++i) {
        AngleParameter a = sample(), b = sample();
        comm = std::max(comm, commutation_residual(f, a));
        det = std::max(det, std::abs(f.evaluate(a).determinant() - 1.0));
        law = std::max(law, max_abs(f.evaluate(a) * f.evaluate(b) - f.evaluate(a + b)));
      }
      const AngleParameter zero = f.arity() == 1 ? AngleParameter{0.0} : AngleParameter{0.0, 0.0};
      double id = max_abs(f.evaluate(zero) - Mat6::Identity());
      bool ok = comm < 1e-12 && det < 1e-12 && law < 1e-12 && id < 1e-12;
      return std::pair{ok, "commutation " + sci(comm) + ", det " + sci(det) + ", group law " + sci(law)};
    });
  }
}

void boundary_suite(const ConstantTables& tables, std::vector<CheckResult>& out) {
  Runner run("boundary", out);
  for (Subgroup s : kSubgroups) {
    const std::string n = to_string(s);
    auto f = SchurFamily::make(s, tables);
    std::vector<AngleParameter> found;
    run.check("solve_" + n, [&] {
      found = boundary_solve(f);
      return std::pair{!found.empty(), std::to_string(found.size()) + " solutions"};
    });
    run.check("published_recovered_" + n, [&] {
      std::size_t hit = 0;
      auto expected = published_solutions(s);
      for (const auto& e : expected)
        if (std::any_of(found.begin(), found.end(), [&](const AngleParameter& p) { return p.distance(e) < 1e-9; }))
          ++hit;
      return std::pair{hit == expected.size() && !found.empty(),
                       std::to_string(hit) + "/" + std::to_string(expected.size())};
    });
    run.check("solutions_valid_" + n, [&] {
      double worst = 0.0;
      bool irreps = true;
      for (const auto& p : found) {
        auto b = identify_partner_blocks(f, p);
        worst = std::max(worst, b.off_block_residual);
        bool pair = (b.top == IrrepLabel::T1 && b.bottom == IrrepLabel::T2) ||
                    (b.top == IrrepLabel::T2 && b.bottom == IrrepLabel::T1);
        irreps = irreps && pair;
      }
      return std::pair{!found.empty() && worst < 1e-10 && irreps,
                       "max residual " + sci(worst) + (irreps ? ", T1+T2" : ", irrep mismatch")};
    });
  }
}

} // namespace

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"groups", "reduction", "centralizer", "boundary"};
  return names;
}

std::vector<CheckResult> run_verification(const ConstantTables& tables, const std::vector<std::string>& only) {
  for (const auto& s : only)
    if (std::find(verification_suites().begin(), verification_suites().end(), s) == verification_suites().end())
      throw std::invalid_argument("unknown suite '" + s + "'");
  auto wanted = [&](const std::string& s) {
    return only.empty() || std::find(only.begin(), only.end(), s) != only.end();
  };
  std::vector<CheckResult> out;
  if (wanted("groups"))
    groups_suite(tables, out);
  if (wanted("reduction"))
    reduction_suite(tables, out);
  if (wanted("centralizer"))
    centralizer_suite(tables, out);
  if (wanted("boundary"))
    boundary_suite(tables, out);
  return out;
}

std::vector<AngleParameter> published_solutions(Subgroup s) {
  const double h = std::atan(0.5), two = std::atan(2.0);
  switch (s) {
    case Subgroup::T:
      return {{-h}, {pi - h}, {two}, {two - pi}};
    case Subgroup::D10:
      return {{pi / 2}};
    case Subgroup::D6:
      return {{h, two},       {-two, pi - h},      {h, two - pi},     {-two, -h},
              {h - pi, two - pi}, {pi - two, -h}, {h - pi, two},    {pi - two, pi - h}};
  }
  return {};
}

AngleParameter misprinted_d6_solution() { return {std::atan(2.0), pi - std::atan(0.5)}; }

PartnerBlocks identify_partner_blocks(const SchurFamily& family, const AngleParameter& angles) {
  const Mat6 rg = family.evaluate(angles) * family.frame();
  const auto d = reduce_rep(rg, family.partner_generators());
  return {identify_irrep(d.top), identify_irrep(d.bottom), d.off_block_residual};
}

} // namespace qcs
