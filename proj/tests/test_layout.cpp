#include <doctest.h>

#include <cmath>

#include "lsc/error.hpp"
#include "lsc/layout.hpp"

using namespace lsc;

namespace {

// Counts routable and data tiles in the square cell whose top-left corner is `origin`.
TileRatio count_cell(const Layout& layout, TileCoord origin, int side) {
  TileRatio r;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const TileKind k = layout.kind(TileCoord{origin.row + i, origin.col + j});
      if (k == TileKind::DataQubit) ++r.data;
      if (is_routable(k)) ++r.ancilla;
    }
  }
  return r;
}

bool same_ratio(TileRatio a, TileRatio b) { return a.ancilla * b.data == b.ancilla * a.data; }

}  // namespace

TEST_SUITE("layout") {
  TEST_CASE("parse small grid") {
    const Layout l = parse_layout_ascii("QrQ\nrrr\nQrQ");
    CHECK(l.rows() == 3);
    CHECK(l.cols() == 3);
    CHECK(l.qubit_tiles().size() == 4);
    const auto s = layout_summary(l);
    CHECK(s.counts.at(TileKind::DataQubit) == 4);
    CHECK(s.counts.at(TileKind::Routing) == 5);
    CHECK(s.total == 9);
  }

  TEST_CASE("every glyph maps to its kind") {
    const Layout l = parse_layout_ascii("QArMYX0\nrrrrrr9\n");
    CHECK(l.kind(TileCoord{0, 0}) == TileKind::DataQubit);
    CHECK(l.kind(TileCoord{0, 1}) == TileKind::Ancilla);
    CHECK(l.kind(TileCoord{0, 2}) == TileKind::Routing);
    CHECK(l.kind(TileCoord{0, 3}) == TileKind::MagicReserved);
    CHECK(l.kind(TileCoord{0, 4}) == TileKind::YState);
    CHECK(l.kind(TileCoord{0, 5}) == TileKind::Dead);
    CHECK(l.kind(TileCoord{0, 6}) == TileKind::Distillation);
    CHECK(l.kind(TileCoord{1, 6}) == TileKind::Distillation);
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_layout_ascii("QrZ\nrrr"), ParseError);
    CHECK_THROWS_AS(parse_layout_ascii("Qrr\nrr"), ParseError);
    CHECK_THROWS_AS(parse_layout_ascii(""), ParseError);
    try {
      parse_layout_ascii("rrr\nrZr");
      FAIL("expected error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 2);
    }
  }

  TEST_CASE("data tile needs a usable neighbour") {
    CHECK_THROWS_AS(parse_layout_ascii("XXX\nXQX\nXXX"), ConfigError);
    CHECK_NOTHROW(parse_layout_ascii("XXX\nXQr\nXXX"));
  }

  TEST_CASE("emit and parse round-trip") {
    for (std::uint32_t L : {1u, 4u, 9u, 10u, 23u}) {
      for (EdpcOptions o : {EdpcOptions{1, false}, EdpcOptions{2, false}, EdpcOptions{1, true}}) {
        const Layout l = generate_edpc(L, o);
        CHECK(parse_layout_ascii(emit_layout_ascii(l)) == l);
      }
    }
  }

  TEST_CASE("default footprint") {
    for (std::uint32_t L = 1; L <= 130; ++L) {
      const Layout l = generate_edpc(L);
      const auto side = static_cast<std::uint64_t>(2 * std::ceil(std::sqrt(static_cast<double>(L))) + 3);
      CHECK(l.size() == side * side);
      CHECK(l.qubit_tiles().size() == L);
    }
    CHECK(generate_edpc(23).size() == 169);
    CHECK(generate_edpc(55).size() == 361);
  }

  TEST_CASE("nine-qubit EDPC family") {
    const Layout a = generate_edpc(9, {1, false});
    CHECK(a.rows() == 9);
    CHECK(a.size() == 81);
    CHECK(a.qubit_tiles().size() == 9);
    CHECK(layout_summary(a).bulk.ancilla == 3);
    CHECK(layout_summary(a).bulk.data == 1);
    CHECK(same_ratio(count_cell(a, a.qubit_tiles()[0], 2), {3, 1}));

    const Layout b = generate_edpc(9, {2, false});
    CHECK(layout_summary(b).bulk.ancilla == 8);
    CHECK(layout_summary(b).bulk.data == 1);
    CHECK(same_ratio(count_cell(b, b.qubit_tiles()[0], 3), {8, 1}));
    CHECK(layout_summary(b).counts.at(TileKind::Routing) > layout_summary(a).counts.at(TileKind::Routing));

    const Layout c = generate_edpc(12, {1, true});
    CHECK(layout_summary(c).bulk.ancilla == 5);
    CHECK(layout_summary(c).bulk.data == 4);
    CHECK(same_ratio(count_cell(c, c.qubit_tiles()[0], 3), {5, 4}));
  }

  TEST_CASE("condensed blocks are 2x2 and expose two free edges") {
    const Layout c = generate_edpc(16, {1, true});
    CHECK(!edpc_warning(16, {1, true}));
    for (TileCoord q : c.qubit_tiles()) {
      int data_neighbours = 0;
      for (TileCoord n : c.neighbors(q)) data_neighbours += c.kind(n) == TileKind::DataQubit;
      CHECK(data_neighbours == 2);
    }
    CHECK(edpc_warning(9, {1, true}).has_value());
    CHECK(generate_edpc(9, {1, true}).qubit_tiles().size() == 9);
  }

  TEST_CASE("resource tiles sit on the ring next to routing") {
    for (EdpcOptions o : {EdpcOptions{1, false}, EdpcOptions{3, false}, EdpcOptions{2, true}}) {
      const Layout l = generate_edpc(20, o);
      const auto m = l.tiles_of(TileKind::MagicReserved);
      const auto y = l.tiles_of(TileKind::YState);
      CHECK(!m.empty());
      CHECK(!y.empty());
      CHECK(m.size() >= y.size());
      CHECK(m.size() - y.size() <= 1);
      for (const auto& group : {m, y}) {
        for (TileCoord t : group) {
          CHECK((t.row == 0 || t.col == 0 || t.row == l.rows() - 1 || t.col == l.cols() - 1));
          bool touches = false;
          for (TileCoord n : l.neighbors(t)) touches = touches || l.kind(n) == TileKind::Routing;
          CHECK(touches);
        }
      }
      for (TileCoord corner : {TileCoord{0, 0}, TileCoord{0, l.cols() - 1}, TileCoord{l.rows() - 1, 0},
                               TileCoord{l.rows() - 1, l.cols() - 1}}) {
        CHECK(l.kind(corner) == TileKind::Routing);
      }
    }
  }

  TEST_CASE("capacity check") {
    const Layout l = parse_layout_ascii("QrQ\nrrr");
    CHECK_NOTHROW(check_layout_capacity(l, 2));
    CHECK_THROWS_AS(check_layout_capacity(l, 3), ConfigError);
    CHECK_THROWS_AS(generate_edpc(0), ConfigError);
    CHECK_THROWS_AS(generate_edpc(4, {0, false}), ConfigError);
  }

  TEST_CASE("neighbour order is row-major") {
    const Layout l = parse_layout_ascii("rrr\nrQr\nrrr");
    const auto n = l.neighbors(TileCoord{1, 1});
    REQUIRE(n.size() == 4);
    CHECK(std::is_sorted(n.begin(), n.end()));
  }
}
