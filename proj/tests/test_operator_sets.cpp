#include <doctest.h>

#include "sgqst/operator_sets.hpp"
#include "sgqst/state.hpp"

using namespace sgqst;

TEST_CASE("set sizes") {
  CHECK(g1(3).size() == 9);
  CHECK(g1(5).size() == 15);
  CHECK(g1(1).labels() == std::vector<std::string>{"X", "Y", "Z"});

  CHECK(g2(3).size() == 15);
  CHECK(g2(4).size() == 21);
  CHECK(g2(5).size() == 27);
  CHECK_THROWS_AS(g2(1), std::invalid_argument);

  CHECK(g3(3).size() == 17);
  CHECK(g3(4).size() == 23);
  CHECK(g3(5).size() == 29);

  CHECK(g4(3).size() == 21);
  CHECK(g4(4).size() == 33);
  CHECK(g4(5).size() == 48);
  CHECK_THROWS_AS(g4(2), std::invalid_argument);

  CHECK(full_set(3).size() == 63);
  CHECK(full_set(4).size() == 255);
  CHECK(full_set(5).size() == 1023);
  CHECK_THROWS(full_set(13));

  for (int n = 3; n <= 6; ++n) {
    for (SetTag t : {SetTag::G1, SetTag::G2, SetTag::G3, SetTag::G4, SetTag::Full}) {
      CHECK(operator_set(t, n).size() == operator_set_size(t, n));
    }
  }
}

TEST_CASE("sets are nested") {
  for (int n = 3; n <= 5; ++n) {
    const auto a = g1(n), b = g2(n), c = g3(n), d = g4(n), f = full_set(n);
    for (const auto& p : a) CHECK(b.contains(p));
    for (const auto& p : b) CHECK(c.contains(p));
    for (const auto& p : c) CHECK(d.contains(p));
    for (const auto& p : d) CHECK(f.contains(p));
    // shared prefix ordering
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(c[k] == b[k]);
  }
}

TEST_CASE("set contents") {
  const auto s = g3(3);
  const std::vector<std::string> expected = {"XII", "YII", "ZII", "IXI", "IYI", "IZI", "IIX", "IIY", "IIZ",
                                             "XXI", "YYI", "ZZI", "IXX", "IYY", "IZZ", "XXX", "YYY"};
  CHECK(s.labels() == expected);
  const auto l = g4(3).labels();
  CHECK(std::find(l.begin(), l.end(), "XIX") != l.end());
  CHECK(std::find(l.begin(), l.end(), "ZIZ") != l.end());
  CHECK(l.back() == "ZZZ");
}

TEST_CASE("stabilizer pattern of g3 on GHZ") {
  for (int n = 3; n <= 5; ++n) {
    const CMatrix g = ghz(n).matrix();
    const std::string ys(static_cast<std::size_t>(n), 'Y');
    for (const auto& p : g3(n)) {
      const std::string label = p.label();
      const double e = expectation(g, p);
      double want = 0.0;
      if (label.find_first_not_of("IZ") == std::string::npos && p.weight() == 2) want = 1.0;
      if (label == std::string(static_cast<std::size_t>(n), 'X')) want = 1.0;
      // <Y^n> = Re(i^n)
      if (label == ys) want = (n % 4 == 0) ? 1.0 : (n % 4 == 2 ? -1.0 : 0.0);
      CHECK_MESSAGE(std::abs(e - want) < 1e-12, label);
    }
  }
}

TEST_CASE("custom sets") {
  const std::vector<std::string> ok = {"XXX", "YYY"};
  CHECK(parse_custom(ok, 3).size() == 2);
  CHECK(parse_custom(ok, 3).tag() == SetTag::Custom);

  auto error_of = [](const std::vector<std::string>& labels) -> std::string {
    try {
      parse_custom(labels, 3);
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return "";
  };
  CHECK(error_of({"XX"}).find("XX") != std::string::npos);
  CHECK(error_of({"ZZI", "ZZI"}).find("duplicate") != std::string::npos);
  CHECK(error_of({"ZZI", "ZZI"}).find("ZZI") != std::string::npos);
  CHECK(error_of({"III"}).find("III") != std::string::npos);
  CHECK(error_of({"XQX"}).find("XQX") != std::string::npos);
  CHECK_THROWS(operator_set(SetTag::Custom, 3));
}

TEST_CASE("tags") {
  CHECK(parse_set_tag("g3") == SetTag::G3);
  CHECK(parse_set_tag("full") == SetTag::Full);
  CHECK(to_string(SetTag::G4) == "G4");
  CHECK_THROWS_AS(parse_set_tag("G7"), std::invalid_argument);
}
