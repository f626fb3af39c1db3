#include "qcschur/tables.hpp"

#include <cmath>
#include <stdexcept>

namespace qcs {

namespace {

SignedPermMatrix spm(std::initializer_list<int> rows) {
  if (rows.size() != 36)
    throw std::logic_error("signed permutation literal needs 36 entries");
  std::array<int, 36> a{};
  std::copy(rows.begin(), rows.end(), a.begin());
  return SignedPermMatrix(a);
}

GoldenMatrix half3(std::initializer_list<std::string_view> cells) {
  return GoldenMatrix::from_strings(3, 3, cells, 2);
}

double gd(std::string_view s) { return to_double(GoldenNumber::parse(s)); }

ConstantTables build_standard() {
  ConstantTables t;

  t.frame = ScaledGoldenMatrix(
      GoldenMatrix::from_strings(6, 6,
                                 {"t", "1", "0", "t", "0", "1",
                                  "0", "t", "1", "-1", "t", "0",
                                  "-1", "0", "t", "0", "-1", "t",
                                  "0", "-t", "1", "1", "t", "0",
                                  "t", "-1", "0", "-t", "0", "1",
                                  "1", "0", "t", "0", "-1", "-t"}),
      GoldenNumber::parse("4+2t"));

  const SignedPermMatrix g2 = spm({0, 0, 0, 0, 0, 1,
                                   0, 0, 0, 0, 1, 0,
                                   0, 0, -1, 0, 0, 0,
                                   0, 0, 0, -1, 0, 0,
                                   0, 1, 0, 0, 0, 0,
                                   1, 0, 0, 0, 0, 0});
  const SignedPermMatrix g3 = spm({0, 0, 0, 0, 0, 1,
                                   0, 0, 0, 1, 0, 0,
                                   0, -1, 0, 0, 0, 0,
                                   0, 0, -1, 0, 0, 0,
                                   1, 0, 0, 0, 0, 0,
                                   0, 0, 0, 0, 1, 0});
  t.icosahedral = {g2, g3};

  const GoldenMatrix rho3_g2 = half3({"t-1", "1", "t",
                                      "1", "-t", "t-1",
                                      "t", "t-1", "-1"});
  const GoldenMatrix rho3_g3 = half3({"t", "t-1", "1",
                                      "1-t", "-1", "t",
                                      "1", "-t", "1-t"});
  const GoldenMatrix rho3p_g2 = half3({"t-1", "-t", "-1",
                                       "-t", "-1", "t-1",
                                       "-1", "t-1", "-t"});
  const GoldenMatrix rho3p_g3 = half3({"-1", "1-t", "-t",
                                       "t-1", "t", "-1",
                                       "t", "-1", "1-t"});
  t.rho3 = {rho3_g2, rho3_g3};
  t.rho3_prime = {rho3p_g2, rho3p_g3};

  // tetrahedral
  {
    auto& s = t.tetrahedral;
    s.generators = {g2, spm({0, 1, 0, 0, 0, 0,
                             0, 0, 0, -1, 0, 0,
                             0, 0, 0, 0, 0, -1,
                             -1, 0, 0, 0, 0, 0,
                             0, 0, 1, 0, 0, 0,
                             0, 0, 0, 0, -1, 0})};
    s.partner_generators = {spm({0, 0, 0, -1, 0, 0,
                                 0, 0, 0, 0, 0, -1,
                                 0, 0, -1, 0, 0, 0,
                                 -1, 0, 0, 0, 0, 0,
                                 0, 0, 0, 0, -1, 0,
                                 0, -1, 0, 0, 0, 0}),
                            spm({0, 0, 0, -1, 0, 0,
                                 0, 0, 0, 0, -1, 0,
                                 0, -1, 0, 0, 0, 0,
                                 0, 0, 0, 0, 0, 1,
                                 0, 0, 1, 0, 0, 0,
                                 -1, 0, 0, 0, 0, 0})};
    s.block1 = {rho3_g2, half3({"1-t", "1", "t",
                                "1", "t", "1-t",
                                "-t", "t-1", "-1"})};
    s.block2 = {rho3p_g2, half3({"1-t", "t", "-1",
                                 "-t", "-1", "1-t",
                                 "-1", "t-1", "t"})};
    t.tetrahedral_q = ScaledGoldenMatrix(
        GoldenMatrix::from_strings(3, 3, {"3-t", "1", "t+2",
                                          "-t-2", "3-t", "1",
                                          "-1", "-t-2", "3-t"}),
        16);
    s.reducer1 = Mat3::Identity();
    s.reducer2 = t.tetrahedral_q.to_real();
  }

  const SignedPermMatrix g2d = spm({0, 0, 0, 0, 0, -1,
                                    0, -1, 0, 0, 0, 0,
                                    0, 0, 0, 1, 0, 0,
                                    0, 0, 1, 0, 0, 0,
                                    0, 0, 0, 0, -1, 0,
                                    -1, 0, 0, 0, 0, 0});
  const GoldenMatrix d1_g2d = half3({"-t", "t-1", "-1",
                                     "t-1", "-1", "-t",
                                     "-1", "-t", "t-1"});
  const GoldenMatrix d2_g2d = half3({"-1", "t-1", "t",
                                     "t-1", "-t", "1",
                                     "t", "1", "t-1"});

  // dihedral of order 10
  {
    auto& s = t.dihedral10;
    s.generators = {g2d, spm({0, 0, 0, 0, 0, 1,
                              0, 1, 0, 0, 0, 0,
                              0, 0, 0, 0, -1, 0,
                              -1, 0, 0, 0, 0, 0,
                              0, 0, 0, 1, 0, 0,
                              0, 0, 1, 0, 0, 0})};
    s.partner_generators = {spm({0, 0, 0, 0, -1, 0,
                                 0, 0, 0, 1, 0, 0,
                                 0, 0, -1, 0, 0, 0,
                                 0, 1, 0, 0, 0, 0,
                                 -1, 0, 0, 0, 0, 0,
                                 0, 0, 0, 0, 0, -1}),
                            spm({0, 0, 0, 0, -1, 0,
                                 0, 0, -1, 0, 0, 0,
                                 0, 0, 0, 0, 0, 1,
                                 1, 0, 0, 0, 0, 0,
                                 0, 0, 0, -1, 0, 0,
                                 0, -1, 0, 0, 0, 0})};
    s.block1 = {d1_g2d, half3({"t-1", "-1", "t",
                               "1", "t", "t-1",
                               "-t", "t-1", "1"})};
    s.block2 = {d2_g2d, half3({"1-t", "-t", "-1",
                               "-t", "1", "1-t",
                               "1", "t-1", "-t"})};
    const double a = std::sqrt(gd("t+2") / 5);
    const double b = std::sqrt(gd("3-t") / 5);
    const double c = gd("2t-1") / std::sqrt(5 * gd("t+2"));
    const double d = gd("1-2t") / std::sqrt(5 * gd("3-t"));
    const double e = gd("2t-1") / std::sqrt(5 * gd("3-t"));
    s.reducer1 << 0, 1, 0,
                  a, 0, b,
                  c, 0, d;
    s.reducer2 << b, e, 0,
                  d, b, 0,
                  0, 0, 1;
  }

  // dihedral of order 6
  {
    auto& s = t.dihedral6;
    s.generators = {g2d, g3};
    s.partner_generators = {spm({0, 0, -1, 0, 0, 0,
                                 0, 0, 0, 0, 0, -1,
                                 -1, 0, 0, 0, 0, 0,
                                 0, 0, 0, -1, 0, 0,
                                 0, 0, 0, 0, -1, 0,
                                 0, -1, 0, 0, 0, 0}),
                            spm({0, 0, -1, 0, 0, 0,
                                 0, 0, 0, 0, 1, 0,
                                 0, 0, 0, 0, 0, 1,
                                 0, -1, 0, 0, 0, 0,
                                 0, 0, 0, -1, 0, 0,
                                 -1, 0, 0, 0, 0, 0})};
    s.block1 = {d1_g2d, rho3_g3};
    s.block2 = {d2_g2d, rho3p_g3};
    const double tau = gd("t");
    const double r3 = std::sqrt(3.0);
    s.reducer1 << tau, 0, 1 - tau,
                  0, r3, 0,
                  tau - 1, 0, tau;
    s.reducer2 << 0, r3, 0,
                  tau, 0, 1 - tau,
                  1 - tau, 0, -tau;
    s.reducer1 /= r3;
    s.reducer2 /= r3;
  }
  return t;
}

nlohmann::json golden_json(const GoldenMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

GoldenMatrix golden_from_json(const nlohmann::json& j) {
  std::size_t rows = j.size();
  std::size_t cols = rows ? j.at(0).size() : 0;
  GoldenMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols)
      throw std::invalid_argument("ragged golden matrix");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = GoldenNumber::parse(j.at(r).at(c).get<std::string>());
  }
  return m;
}

nlohmann::json perm_pair_json(const GeneratorPair& p) {
  return nlohmann::json::array({p[0].to_array(), p[1].to_array()});
}

GeneratorPair perm_pair_from_json(const nlohmann::json& j) {
  if (j.size() != 2)
    throw std::invalid_argument("expected a generator pair");
  return {SignedPermMatrix(j.at(0).get<std::array<int, 36>>()),
          SignedPermMatrix(j.at(1).get<std::array<int, 36>>())};
}

nlohmann::json mat3_json(const Mat3& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 3; ++r)
    rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

Mat3 mat3_from_json(const nlohmann::json& j) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      m(r, c) = j.at(r).at(c).get<double>();
  return m;
}

nlohmann::json scaled_json(const ScaledGoldenMatrix& m) {
  return {{"entries", golden_json(m.entries())}, {"norm_squared", m.norm_squared().str()}};
}

ScaledGoldenMatrix scaled_from_json(const nlohmann::json& j) {
  return ScaledGoldenMatrix(golden_from_json(j.at("entries")),
                            GoldenNumber::parse(j.at("norm_squared").get<std::string>()));
}

} // namespace

std::string to_string(Subgroup s) {
  switch (s) {
    case Subgroup::T: return "T";
    case Subgroup::D10: return "D10";
    case Subgroup::D6: return "D6";
  }
  return "?";
}

std::optional<Subgroup> parse_subgroup(std::string_view s) {
  if (s == "T")
    return Subgroup::T;
  if (s == "D10")
    return Subgroup::D10;
  if (s == "D6")
    return Subgroup::D6;
  return std::nullopt;
}

const SubgroupTables& ConstantTables::subgroup(Subgroup s) const {
  switch (s) {
    case Subgroup::T: return tetrahedral;
    case Subgroup::D10: return dihedral10;
    case Subgroup::D6: return dihedral6;
  }
  throw std::logic_error("unknown subgroup");
}

const ConstantTables& ConstantTables::standard() {
  static const ConstantTables tables = build_standard();
  return tables;
}

GroupLabel subgroup_label(Subgroup s) {
  switch (s) {
    case Subgroup::T: return GroupLabel::T;
    case Subgroup::D10: return GroupLabel::D10;
    case Subgroup::D6: return GroupLabel::D6;
  }
  return GroupLabel::Other;
}

GroupLabel partner_label(Subgroup s) {
  switch (s) {
    case Subgroup::T: return GroupLabel::I_T;
    case Subgroup::D10: return GroupLabel::I_D10;
    case Subgroup::D6: return GroupLabel::I_D6;
  }
  return GroupLabel::Other;
}

MatrixGroup icosahedral_group(const ConstantTables& tables) {
  return closure(tables.icosahedral, GroupLabel::I);
}

MatrixGroup subgroup_group(Subgroup s, const ConstantTables& tables) {
  return closure(tables.subgroup(s).generators, subgroup_label(s));
}

MatrixGroup partner_group(Subgroup s, const ConstantTables& tables) {
  return closure(tables.subgroup(s).partner_generators, partner_label(s));
}

nlohmann::json tables_to_json(const ConstantTables& t) {
  nlohmann::json doc;
  doc["frame"] = scaled_json(t.frame);
  doc["icosahedral"] = perm_pair_json(t.icosahedral);
  doc["rho3"] = {golden_json(t.rho3[0]), golden_json(t.rho3[1])};
  doc["rho3_prime"] = {golden_json(t.rho3_prime[0]), golden_json(t.rho3_prime[1])};
  doc["tetrahedral_q"] = scaled_json(t.tetrahedral_q);
  nlohmann::json subs = nlohmann::json::object();
  for (Subgroup s : {Subgroup::T, Subgroup::D10, Subgroup::D6}) {
    const auto& st = t.subgroup(s);
    subs[to_string(s)] = {
        {"generators", perm_pair_json(st.generators)},
        {"partner_generators", perm_pair_json(st.partner_generators)},
        {"block1", {golden_json(st.block1[0]), golden_json(st.block1[1])}},
        {"block2", {golden_json(st.block2[0]), golden_json(st.block2[1])}},
        {"reducer1", mat3_json(st.reducer1)},
        {"reducer2", mat3_json(st.reducer2)},
    };
  }
  doc["subgroups"] = subs;
  return doc;
}

ConstantTables tables_from_json(const nlohmann::json& doc) {
  ConstantTables t;
  t.frame = scaled_from_json(doc.at("frame"));
  t.icosahedral = perm_pair_from_json(doc.at("icosahedral"));
  t.rho3 = {golden_from_json(doc.at("rho3").at(0)), golden_from_json(doc.at("rho3").at(1))};
  t.rho3_prime = {golden_from_json(doc.at("rho3_prime").at(0)),
                  golden_from_json(doc.at("rho3_prime").at(1))};
  t.tetrahedral_q = scaled_from_json(doc.at("tetrahedral_q"));
  for (Subgroup s : {Subgroup::T, Subgroup::D10, Subgroup::D6}) {
    const auto& j = doc.at("subgroups").at(to_string(s));
    SubgroupTables st;
    st.generators = perm_pair_from_json(j.at("generators"));
    st.partner_generators = perm_pair_from_json(j.at("partner_generators"));
    st.block1 = {golden_from_json(j.at("block1").at(0)), golden_from_json(j.at("block1").at(1))};
    st.block2 = {golden_from_json(j.at("block2").at(0)), golden_from_json(j.at("block2").at(1))};
    st.reducer1 = mat3_from_json(j.at("reducer1"));
    st.reducer2 = mat3_from_json(j.at("reducer2"));
    switch (s) {
      case Subgroup::T: t.tetrahedral = st; break;
      case Subgroup::D10: t.dihedral10 = st; break;
      case Subgroup::D6: t.dihedral6 = st; break;
    }
  }
  return t;
}

} // namespace qcs
