#include <doctest.h>

#include <sstream>

#include "ffdist/error.hpp"
#include "ffdist/point_set.hpp"
#include "test_support.hpp"

using namespace ffdist;
using namespace testing_support;

TEST_CASE("point files round trip") {
  const auto pl = plane(7);
  TestRng rng(1);
  const PointSet set = random_set(pl, 20, rng);
  std::stringstream buf;
  write_points(buf, set);
  CHECK(read_points(buf, pl) == set);
}

TEST_CASE("point file comments, blanks and duplicates") {
  const auto pl = plane(3);
  std::istringstream in("# triangle\n0,0\n\n1,0  # B\n 0 , 1\n0,0\n");
  const auto set = read_points(in, pl);
  CHECK(set == abc(pl));
}

TEST_CASE("malformed point files") {
  const auto pl = plane(3);
  for (const char* text : {"0\n", "0,3\n", "a,b\n", "1,2,3\n", "-1,0\n"}) {
    std::istringstream in(text);
    try {
      read_points(in, pl);
      FAIL("accepted: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
  }
}

TEST_CASE("point set membership and transforms") {
  const auto pl = plane(7);
  const auto set = abc(pl);
  CHECK(set.contains(pl->index(1, 0)));
  CHECK_FALSE(set.contains(pl->index(1, 1)));
  CHECK(set.is_subset_of(PointSet::full(pl)));
  const auto moved = set.transformed(pl->identity_element(), pl->index(1, 1));
  CHECK(moved.contains(pl->index(1, 1)));
  CHECK(moved.contains(pl->index(2, 1)));
  CHECK_THROWS_AS(PointSet(pl, std::vector<PointIndex>{49}), Error);
}
