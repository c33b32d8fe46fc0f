#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "rslab/io.hpp"

using namespace rslab;

TEST_CASE("body json round trip") {
    Body t = make_simplex(2);
    std::string first = body_to_json(t);
    Body back = body_from_json(first);
    CHECK(body_to_json(back) == first);
    CHECK(back.dim == 2);
    CHECK(back.vertices.size() == t.vertices.size());

    Body b = make_ball(3, 1.5, Vec{0.5, 0.0, -0.25});
    b.label = "offset ball";
    std::string bj = body_to_json(b);
    Body bb = body_from_json(bj);
    CHECK(body_to_json(bb) == bj);
    CHECK(bb.radius == doctest::Approx(1.5));
    CHECK(bb.label == "offset ball");

    Body e = make_empty(2);
    CHECK(body_from_json(body_to_json(e)).is_empty());
}

TEST_CASE("body json rejects malformed input") {
    CHECK_THROWS_AS(body_from_json("not json at all"), ParseError);
    CHECK_THROWS_AS(body_from_json("{\"form\": \"ball\"}"), ParseError);
    CHECK_THROWS_AS(body_from_json("{\"dim\": 2, \"form\": \"torus\"}"), ParseError);
    CHECK_THROWS_AS(body_from_json("{\"dim\": 9, \"form\": \"ball\", \"radius\": 1}"),
                    ParseError);
    CHECK_THROWS_AS(
        body_from_json("{\"dim\": 2, \"form\": \"vpolytope\", \"vertices\": [[1]]}"),
        ParseError);
    // oracle bodies cannot be written out
    Body oracle = intersect(make_cube(2, 1.0), make_ball(2, 1.0));
    CHECK_THROWS_AS(body_to_json(oracle), FormError);
}

TEST_CASE("function json round trip") {
    QCFunction f = make_qc_function(
        2, 2.0, {0.5, 1.0}, {make_cube(2, 1.0), make_cube(2, 0.5)});
    std::string first = qc_function_to_json(f);
    QCFunction back = qc_function_from_json(first);
    CHECK(qc_function_to_json(back) == first);
    CHECK(back.sup_value == doctest::Approx(2.0));
    CHECK(back.n_levels() == 2);

    CHECK_THROWS_AS(qc_function_from_json("{\"sup\": 1.0, \"levels\": []}"), ParseError);
    CHECK_THROWS_AS(qc_function_from_json("{\"levels\": [1,2]}"), ParseError);
}

TEST_CASE("body hashes are stable and discriminating") {
    std::string h1 = body_hash(make_simplex(2));
    CHECK(h1.size() == 16);
    CHECK(h1 == body_hash(make_simplex(2)));
    CHECK(h1 != body_hash(make_simplex(3)));
    CHECK(h1 != body_hash(make_cube(2, 1.0)));
    // oracle bodies hash too, via their label
    CHECK(body_hash(intersect(make_cube(2, 1.0), make_ball(2, 1.0))).size() == 16);
}

TEST_CASE("report json carries every field plus the input echo") {
    IneqReport rep;
    rep.family = "difference_body";
    rep.variant = "classical";
    rep.lhs.value = 3.0;
    rep.rhs.value = 3.0;
    rep.constant = 6.0;
    rep.ratio = 1.0;
    rep.verdict = Verdict::equality;
    rep.audits.push_back({"density_class", true, false, "declared"});
    rep.metadata.emplace_back("avg_K", "0.5");
    rep.note = "test note";

    InputEcho echo;
    echo.add_body("body", make_simplex(2));
    echo.add_density("density", make_lebesgue(2));
    IntegrateConfig cfg;
    cfg.seed = 7;
    echo.add_config(cfg);

    std::string j = report_to_json(rep, echo);
    for (const char* needle :
         {"\"family\": \"difference_body\"", "\"variant\": \"classical\"",
          "\"verdict\": \"equality\"", "\"constant\": 6.0", "\"audits\"",
          "\"density_class\"", "\"avg_K\"", "\"note\": \"test note\"",
          "\"density\": \"lebesgue\"", "\"seed\": \"7\"", "\"prefer\": \"automatic\"",
          "\"sup_converged\": true"})
        CHECK(j.find(needle) != std::string::npos);
    // the body echo names the body and its hash
    CHECK(j.find(body_hash(make_simplex(2))) != std::string::npos);
    // identical input serializes identically
    CHECK(j == report_to_json(rep, echo));
}

TEST_CASE("csv rows are one line in the documented column order") {
    CHECK(csv_header() ==
          "inequality,variant,params,lhs,lhs_stderr,rhs,rhs_stderr,ratio,verdict\n");
    IneqReport rep;
    rep.lhs.value = 1.25;
    rep.lhs.std_error = 0.5;
    rep.rhs.value = 2.5;
    rep.ratio = 0.5;
    rep.verdict = Verdict::holds;
    std::string row = csv_row("difference_body", "radial", "n=2;density=gaussian", rep);
    CHECK(row == "difference_body,radial,n=2;density=gaussian,1.25,0.5,2.5,0,0.5,holds\n");
}

TEST_CASE("atomic file writes land complete and readable") {
    std::string path = "test_io_scratch.json";
    write_file_atomic(path, "{\"ok\": true}\n");
    CHECK(read_file(path) == "{\"ok\": true}\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file("does_not_exist_anywhere.json"), ParseError);
}
