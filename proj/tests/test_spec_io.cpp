#include <doctest.h>

#include <string>

#include "minksphere/error.hpp"
#include "minksphere/norm.hpp"
#include "minksphere/spec_io.hpp"

using namespace mink;

namespace {
const std::string kSpecDir = MINKSPHERE_SPEC_DIR;
}

TEST_CASE("parse pnorm and lens") {
    const NormSpec p = parse_norm_spec("kind=pnorm\np=2\n");
    CHECK(p.kind == NormKind::PNorm);
    CHECK(p.p == 2.0);

    const NormSpec lens = parse_norm_spec("# comment\nkind=lens\nbeta=0.2  # inline\n");
    CHECK(lens.kind == NormKind::Lens);
    CHECK(lens.beta == 0.2);

    const NormSpec expo = parse_norm_spec("kind=lens\nbeta=2e-1\n");
    CHECK(expo.beta == 0.2);
}

TEST_CASE("parse polygon vertices") {
    const NormSpec s = parse_norm_spec("kind=polygon\nvertices=1,0;0,1;-1,0;0,-1\n");
    REQUIRE(s.vertices.size() == 4);
    CHECK(s.vertices[1].y == 1.0);
    CHECK_NOTHROW((void)Norm2D::build_from_spec(s));
}

TEST_CASE("load transform spec with relative base path") {
    const NormSpec s = load_norm_spec(kSpecDir + "/sheared_lens.norm");
    REQUIRE(s.kind == NormKind::Transform);
    REQUIRE(s.base);
    CHECK(s.base->kind == NormKind::Lens);
    CHECK(s.matrix.a11 == 2.0);
    CHECK(s.matrix.a12 == 1.0);
    const Norm2D norm = Norm2D::build_from_spec(s);
    // gauge_Y(A v) = gauge_X(v) for the pushforward.
    const Norm2D base = Norm2D::build_from_spec(*s.base);
    const Vec2 v{0.3, 0.4};
    CHECK(norm.gauge(s.matrix * v) == doctest::Approx(base.gauge(v)).epsilon(1e-10));
}

TEST_CASE("parse errors carry line numbers and keys") {
    const auto expect_parse_error = [](const std::string& text, const char* needle) {
        try {
            (void)parse_norm_spec(text);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_parse_error("kind=pnorm\n", "'p'");
    expect_parse_error("kind=warp\n", "unknown kind");
    expect_parse_error("kind=lens\nbeta=abc\n", "line 2");
    expect_parse_error("kind=lens\nbeta=0.1\nwhat=1\n", "unexpected key");
    expect_parse_error("kind=pnorm\np=2\np=3\n", "duplicate");
    expect_parse_error("just text\n", "key=value");
}

TEST_CASE("missing files and broken base chains") {
    CHECK_THROWS_AS((void)load_norm_spec("/nonexistent/path.norm"), Error);
    CHECK_THROWS_AS((void)parse_norm_spec("kind=transform\nbase=nope.norm\nmatrix=1,0,0,1\n",
                                          "/nonexistent"),
                    Error);
}

TEST_CASE("all shipped spec files build") {
    for (const char* name : {"euclid.norm", "pnorm4.norm", "square.norm", "lens0.norm",
                             "lens02.norm", "lens02neg.norm", "double_lens.norm",
                             "sheared_lens.norm"}) {
        const NormSpec spec = load_norm_spec(kSpecDir + "/" + name);
        CHECK_NOTHROW((void)Norm2D::build_from_spec(spec));
    }
}
