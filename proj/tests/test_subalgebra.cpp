#include "doctest.h"

#include "dnk/parse.hpp"
#include "dnk/subalgebra.hpp"

using namespace dnk;

static const std::vector<SubalgebraSpec>& all_subalgebras() {
  static std::vector<SubalgebraSpec> list =
      load_subalgebras(std::string(DNK_DATA_DIR) + "/subalgebras.sexp");
  return list;
}

TEST_CASE("subalgebra manifest loads completely") {
  auto& list = all_subalgebras();
  CHECK(list.size() == 40);
  int lax = 0;
  for (auto& s : list) {
    CHECK(!s.basis.empty());
    size_t ncoords = s.lax ? 5 : 4;
    for (auto& b : s.basis) CHECK(b.coords.size() == ncoords);
    if (s.lax) ++lax;
  }
  CHECK(lax == 8);
}

TEST_CASE("field interpretation") {
  Workspace ws = default_workspace();
  VectorField f = interpret_field(parse("Dt(1) + 2*Ds"), false, ws);
  VectorField g = generator(GenKind::Dt, one()) + num(2) * generator(GenKind::Ds);
  CHECK(vf_equal(f, g, ws));
  CHECK_THROWS(interpret_field(parse("Ds*Ds"), false, ws));
  CHECK_THROWS(interpret_field(parse("t + x"), false, ws));
}

TEST_CASE("every listed family is closed under the bracket") {
  Workspace ws = default_workspace();
  for (auto& s : all_subalgebras()) {
    ClosureReport rep = subalgebra_closure(s, ws);
    INFO(s.id, ": ", rep.failure);
    CHECK(rep.closed);
  }
}

TEST_CASE("structure constants of selected families") {
  Workspace ws = default_workspace();
  auto by_id = [&](const std::string& id) -> const SubalgebraSpec& {
    for (auto& s : all_subalgebras())
      if (s.id == id) return s;
    throw std::runtime_error("missing " + id);
  };

  // [Q1, Q2] = Q1 in the two-dimensional scaling family
  ClosureReport r21 = subalgebra_closure(by_id("s2.1"), ws);
  REQUIRE(r21.closed);
  CHECK(r21.coeff[0][1][0] == 1);
  CHECK(r21.coeff[0][1][1] == 0);
  CHECK(r21.coeff[1][0][0] == -1);

  // time translation with scaled shear: bracket lies along Q2
  ClosureReport r25 = subalgebra_closure(by_id("s2.5"), ws);
  REQUIRE(r25.closed);
  CHECK(r25.coeff[0][1][0] == 0);
  CHECK(r25.coeff[0][1][1] == -1);

  // the pair (time translation, scaling) is abelian
  ClosureReport r213 = subalgebra_closure(by_id("s2.13"), ws);
  REQUIRE(r213.closed);
  for (auto& row : r213.coeff)
    for (auto& cell : row)
      for (auto& q : cell) CHECK(q == 0);
}

TEST_CASE("a non-closed pair is detected") {
  Workspace ws = default_workspace();
  SubalgebraSpec s;
  s.id = "bad";
  s.basis = {interpret_field(parse("Dt(1)"), false, ws),
             interpret_field(parse("Px(t^2)"), false, ws)};
  ClosureReport rep = subalgebra_closure(s, ws);
  CHECK(!rep.closed);   // [Dt(1), Px(t^2)] = Px(2t) leaves the span
  CHECK(!rep.failure.empty());
}

TEST_CASE("generic reduction ranks") {
  auto by_id = [&](const std::string& id) -> const SubalgebraSpec& {
    for (auto& s : all_subalgebras())
      if (s.id == id) return s;
    throw std::runtime_error("missing " + id);
  };

  // vertical shift family: rank 0 over the horizontal coordinates
  RankReport r15 = reduction_rank(by_id("s1.5"));
  CHECK(r15.rank_txy == 0);
  CHECK(r15.rank_all == 1);
  CHECK(!r15.appropriate);

  RankReport r11 = reduction_rank(by_id("s1.1"));
  CHECK(r11.rank_txy == 1);
  CHECK(r11.rank_all == 1);
  CHECK(r11.appropriate);

  // one horizontal direction + one vertical: horizontal rank stays 1
  RankReport r27 = reduction_rank(by_id("s2.7"));
  CHECK(r27.rank_txy == 1);
  CHECK(r27.rank_all == 2);
  CHECK(!r27.appropriate);

  RankReport r213 = reduction_rank(by_id("s2.13"));
  CHECK(r213.appropriate);
}
