#include "primephase/ingest.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace primephase;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PiTable parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_pi_table(in);
}

std::size_t error_line(const std::string& text)
{
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("parse a well-formed table", "[ingest]")
{
    const auto t = parse("\xEF\xBB\xBF# comment\n\nx,pi\n100,25\n 1000 , 168 \r\n# tail\n0010000,1229\n");
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].x == "100");
    CHECK(t.rows[1].pi_x == "168");
    CHECK(t.rows[2].x == "10000");
    CHECK(parse("").rows.empty());
    CHECK(parse("x,pi\n").rows.empty());
}

TEST_CASE("parse errors carry the line number", "[ingest]")
{
    CHECK(error_line("100,25\n") == 1);                        // missing header
    CHECK(error_line("x,pi\n100,25\n1000\n") == 3);            // one field
    CHECK(error_line("x,pi\n100,25,1\n") == 2);                // three fields
    CHECK(error_line("x,pi\n100,2.5\n") == 2);                 // not an integer
    CHECK(error_line("x,pi\n-100,25\n") == 2);                 // sign
    CHECK(error_line("x,pi\n100,25\n100,25\n") == 3);          // x repeated
    CHECK(error_line("x,pi\n1000,168\n100,25\n") == 3);        // x decreasing
    CHECK(error_line("x,pi\n100,25\n1000,24\n") == 3);         // pi decreasing
    CHECK(error_line("x,pi\n10,11\n") == 2);                   // pi > x
    CHECK(error_line("# c\n\nx,pi\n100,25\n200,x\n") == 5);

    try {
        parse("x,pi\n1000,168\n100,25\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("line 3"));
        CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("x = 100"));
    }
}

TEST_CASE("decimal comparison beyond 64 bits", "[ingest]")
{
    const auto t = parse("x,pi\n99999999999999999999,1\n100000000000000000000,2\n");
    CHECK(t.rows.size() == 2);
    CHECK(error_line("x,pi\n100000000000000000000,1\n99999999999999999999,2\n") == 3);
}

TEST_CASE("bundled decade table", "[ingest]")
{
    const auto t = load_pi_table(std::string(PRIMEPHASE_DATA_DIR) + "/pi_decades.csv");
    REQUIRE(t.rows.size() == 23);
    CHECK(t.rows[5].x == "1000000");
    CHECK(t.rows[5].pi_x == "78498");
    CHECK(t.rows[22].pi_x == "1925320391606803968923");

    const auto samples = extended_samples(t, EnvelopeParams::eta1(), RModel::exact());
    REQUIRE(samples.size() == 23);
    // li(10^k) - pi(10^k) for k = 10, 12.
    CHECK_THAT(samples[9].li_minus_pi(), WithinAbs(3103.59, 0.01));
    CHECK_THAT(samples[11].li_minus_pi(), WithinRel(38262.8, 1e-5));
    for (const auto& s : samples) {
        CHECK_FALSE(s.category.has_value());
        CHECK(std::isfinite(s.cos_delta));
        CHECK(std::abs(s.cos_delta) <= 1.0);
    }
    CHECK_THROWS(load_pi_table("/nonexistent/pi.csv"));
}

TEST_CASE("extended samples reject out-of-range x", "[ingest]")
{
    CHECK_THROWS_AS(extended_samples(parse("x,pi\n1,0\n"), EnvelopeParams::eta1()), DomainError);
    const std::string huge = "1" + std::string(301, '0');
    CHECK_THROWS_AS(extended_samples(parse("x,pi\n" + huge + ",1\n"), EnvelopeParams::eta1()), RangeError);
}
