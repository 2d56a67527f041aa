#include <catch2/catch_amalgamated.hpp>

#include "bagpack/io.hpp"
#include "bagpack/synth.hpp"
#include "helpers.hpp"

using namespace bagpack;
using testutil::TempDir;

TEST_CASE("pairs files parse with comments, labels and case folding", "[io]") {
    TempDir tmp("pairs");
    testutil::write_file(tmp.path("p.tsv"),
                         "# header comment\n"
                         "Cat\tLion\tfeline\n"
                         "\n"
                         "dog\twolf\n");
    auto pairs = read_pairs_file(tmp.path("p.tsv"));
    REQUIRE(pairs.size() == 2);
    REQUIRE(pairs[0].w1 == "cat");
    REQUIRE(pairs[0].w2 == "lion");
    REQUIRE(pairs[0].label == "feline");
    REQUIRE(pairs[1].label.empty());
}

TEST_CASE("pairs files report malformed rows by line number", "[io]") {
    TempDir tmp("pairs_bad");
    testutil::write_file(tmp.path("one_field.tsv"), "cat\n");
    REQUIRE_THROWS_WITH(read_pairs_file(tmp.path("one_field.tsv")),
                        Catch::Matchers::ContainsSubstring("line 1"));
    testutil::write_file(tmp.path("same.tsv"), "cat\tdog\ncat\tCat\n");
    REQUIRE_THROWS_WITH(read_pairs_file(tmp.path("same.tsv")),
                        Catch::Matchers::ContainsSubstring("line 2"));
    testutil::write_file(tmp.path("spacey.tsv"), "two words\tdog\n");
    REQUIRE_THROWS_AS(read_pairs_file(tmp.path("spacey.tsv")), InputError);
    testutil::write_file(tmp.path("empty.tsv"), "# nothing\n");
    REQUIRE_THROWS_AS(read_pairs_file(tmp.path("empty.tsv")), InputError);
    REQUIRE_THROWS_AS(read_pairs_file(tmp.path("missing.tsv")), InputError);
}

TEST_CASE("basis files round-trip through write and read", "[io]") {
    TempDir tmp("basis");
    FreqTable f;
    f.unigrams = {{"the", 30}, {"cat", 12}, {"dog", 12}, {"a", 4}};
    f.bigrams = {{{"the", "cat"}, 9}, {{"the", "dog"}, 9}, {{"a", "cat"}, 2}};
    BasisSet basis = select_basis(f, 2);
    write_basis_file(tmp.path("b.tsv"), basis);
    BasisSet back = read_basis_file(tmp.path("b.tsv"));
    REQUIRE(back.b() == 2);
    for (std::size_t i = 0; i < 4; ++i) {
        REQUIRE(back.terms()[i].first == basis.terms()[i].first);
        REQUIRE(back.terms()[i].second == basis.terms()[i].second);
        REQUIRE(back.terms()[i].kind == basis.terms()[i].kind);
        REQUIRE(back.terms()[i].count == basis.terms()[i].count);
        REQUIRE(back.terms()[i].rank == i);
    }
    REQUIRE(testutil::read_file(tmp.path("b.tsv")) ==
            "0\tU\tthe\t30\n1\tU\tcat\t12\n2\tB\tthe cat\t9\n3\tB\tthe dog\t9\n");
}

TEST_CASE("malformed basis files are rejected", "[io]") {
    TempDir tmp("basis_bad");
    testutil::write_file(tmp.path("odd.tsv"), "0\tU\tthe\t3\n");
    REQUIRE_THROWS_AS(read_basis_file(tmp.path("odd.tsv")), InputError);
    testutil::write_file(tmp.path("kind.tsv"), "0\tU\tthe\t3\n1\tX\tcat\t1\n");
    REQUIRE_THROWS_AS(read_basis_file(tmp.path("kind.tsv")), InputError);
    testutil::write_file(tmp.path("order.tsv"), "0\tB\tthe cat\t3\n1\tU\tthe\t1\n");
    REQUIRE_THROWS_AS(read_basis_file(tmp.path("order.tsv")), InputError);
    testutil::write_file(tmp.path("term.tsv"), "0\tU\tthe cat\t3\n1\tB\ta b\t1\n");
    REQUIRE_THROWS_AS(read_basis_file(tmp.path("term.tsv")), InputError);
}

TEST_CASE("count matrices round-trip exactly", "[io]") {
    TempDir tmp("matrix");
    Rng rng(10);
    Corpus c = testutil::random_corpus(rng, 300, 9, 10);
    BasisSet basis = testutil::random_basis(rng, 4, 10);
    std::vector<PairSpec> pairs = {{"t0", "t1", "rel"}, {"t2", "t3", ""}, {"t4", "t5", "x y"}};
    CoocMatrix m = build_matrix(c, pairs, basis, WindowConfig{});
    write_matrix_file(tmp.path("m.tsv"), m);
    MatrixFile mf = read_matrix_file(tmp.path("m.tsv"));
    REQUIRE(mf.integral);
    CoocMatrix back = to_counts(mf, tmp.path("m.tsv"));
    REQUIRE(back.b == m.b);
    REQUIRE(back.labels == m.labels);
    for (std::size_t i = 0; i < m.rows.size(); ++i) REQUIRE(back.rows[i] == m.rows[i]);
}

TEST_CASE("weighted matrices round-trip within exact double formatting", "[io]") {
    TempDir tmp("wmatrix");
    Rng rng(11);
    Corpus c = testutil::random_corpus(rng, 300, 9, 8);
    BasisSet basis = testutil::random_basis(rng, 3, 8);
    CoocMatrix m =
        build_matrix(c, {{"t0", "t1", "a"}, {"t2", "t3", "b"}, {"t4", "t5", "a"},
                         {"t1", "t2", "b"}},
                     basis, WindowConfig{});
    WeightedMatrix w = normalize(m);
    write_matrix_file(tmp.path("w.tsv"), w);
    MatrixFile mf = read_matrix_file(tmp.path("w.tsv"));
    WeightedMatrix back = to_weighted(mf);
    REQUIRE(back.cols() == w.cols());
    for (std::size_t i = 0; i < w.rows.size(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            REQUIRE(back.rows[i].values[j] == w.rows[i].values[j]);
    // a weighted file cannot pose as a count matrix
    if (!mf.integral) REQUIRE_THROWS_AS(to_counts(mf, "w.tsv"), InputError);
}

TEST_CASE("matrix files are validated structurally", "[io]") {
    TempDir tmp("matrix_bad");
    testutil::write_file(tmp.path("h.tsv"), "BPKX\tb=2\trows=0\n");
    REQUIRE_THROWS_AS(read_matrix_file(tmp.path("h.tsv")), InputError);
    testutil::write_file(tmp.path("rows.tsv"), "BPK1\tb=2\trows=2\na\tb\t-\t0:1\n");
    REQUIRE_THROWS_AS(read_matrix_file(tmp.path("rows.tsv")), InputError);
    testutil::write_file(tmp.path("desc.tsv"), "BPK1\tb=2\trows=1\na\tb\t-\t4:1,2:1\n");
    REQUIRE_THROWS_WITH(read_matrix_file(tmp.path("desc.tsv")),
                        Catch::Matchers::ContainsSubstring("ascending"));
    testutil::write_file(tmp.path("range.tsv"), "BPK1\tb=2\trows=1\na\tb\t-\t40:1\n");
    REQUIRE_THROWS_AS(read_matrix_file(tmp.path("range.tsv")), InputError);
    // empty entries field is a valid all-zero row
    testutil::write_file(tmp.path("zero.tsv"), "BPK1\tb=2\trows=1\na\tb\tlbl\t\n");
    MatrixFile mf = read_matrix_file(tmp.path("zero.tsv"));
    REQUIRE(mf.entries[0].empty());
    REQUIRE(mf.pairs[0].label == "lbl");
}

TEST_CASE("scalers round-trip at full precision", "[io]") {
    TempDir tmp("scaler");
    Scaler s;
    s.mean = {0.125, 3.0, -2.5e-7};
    s.stddev = {1.0, 0.0, 0.3333333333333333};
    write_scaler_file(tmp.path("s.tsv"), s, 40);
    ScalerFile back = read_scaler_file(tmp.path("s.tsv"));
    REQUIRE(back.col_begin == 40);
    REQUIRE(back.scaler.mean == s.mean);
    REQUIRE(back.scaler.stddev == s.stddev);
    testutil::write_file(tmp.path("gap.tsv"), "0\t1\t1\n2\t1\t1\n");
    REQUIRE_THROWS_AS(read_scaler_file(tmp.path("gap.tsv")), InputError);
}

TEST_CASE("models round-trip for binary, multiclass and regression", "[io]") {
    TempDir tmp("model");
    Model binary;
    binary.kind = ModelKind::Classifier;
    binary.dim = 5;
    binary.classes = {"neg", "pos"};
    binary.separators = {{{0.0, 1.5, 0.0, -0.25, 0.0}, 0.125}};
    write_model_file(tmp.path("b.tsv"), binary);
    Model b2 = read_model_file(tmp.path("b.tsv"));
    REQUIRE(b2.kind == ModelKind::Classifier);
    REQUIRE(b2.dim == 5);
    REQUIRE(b2.classes == binary.classes);
    REQUIRE(b2.separators.size() == 1);
    REQUIRE(b2.separators[0].weights == binary.separators[0].weights);
    REQUIRE(b2.separators[0].bias == binary.separators[0].bias);

    Model multi = binary;
    multi.classes = {"a", "b", "c"};
    multi.separators = {{{1, 0, 0, 0, 0}, 0.5}, {{0, 1, 0, 0, 0}, -0.5}, {{0, 0, 1, 0, 0}, 0.0}};
    write_model_file(tmp.path("m.tsv"), multi);
    Model m2 = read_model_file(tmp.path("m.tsv"));
    REQUIRE(m2.separators.size() == 3);
    REQUIRE(m2.separators[1].bias == -0.5);
    REQUIRE(m2.separators[2].weights[2] == 1.0);

    Model reg;
    reg.kind = ModelKind::Regressor;
    reg.dim = 2;
    reg.separators = {{{0.75, 0.0}, -3.25}};
    write_model_file(tmp.path("r.tsv"), reg);
    Model r2 = read_model_file(tmp.path("r.tsv"));
    REQUIRE(r2.kind == ModelKind::Regressor);
    REQUIRE(r2.classes.empty());
    REQUIRE(r2.separators[0].weights == reg.separators[0].weights);

    Model bad = binary;
    bad.classes = {"with,comma", "x"};
    REQUIRE_THROWS_AS(write_model_file(tmp.path("bad.tsv"), bad), InputError);
}

TEST_CASE("reports list one row per fold plus a summary", "[io]") {
    TempDir tmp("report");
    EvalReport r = summarize_folds(Metric::Accuracy, {1.0, 0.9, 0.95, 1.0});
    write_report_file(tmp.path("r.tsv"), "condition=full norm=trainfit", r);
    std::string text = testutil::read_file(tmp.path("r.tsv"));
    REQUIRE(text.starts_with("# condition=full norm=trainfit\n"));
    auto lines = detail::file_lines(text);
    REQUIRE(lines.size() == 6);  // header + 4 folds + summary
    REQUIRE(lines[1] == "0\taccuracy\t1");
    auto summary = split_on(lines[5], '\t');
    REQUIRE(summary.size() == 5);
    REQUIRE(summary[0] == "summary");
    REQUIRE(parse_double(summary[1], "mean") == Catch::Approx(r.mean));
}

TEST_CASE("shortest round-trip doubles parse back bit-exact", "[io][property]") {
    Rng rng(2026);
    for (int i = 0; i < 2000; ++i) {
        // assemble doubles across magnitudes, including negatives and tiny values
        double mant = static_cast<double>(rng.below(1u << 30)) / double(1u << 15);
        int expo = static_cast<int>(rng.below(61)) - 30;
        double v = (rng.below(2) ? 1.0 : -1.0) * std::ldexp(mant, expo);
        std::string s = format_double(v);
        REQUIRE(parse_double(s, "prop") == v);
    }
    REQUIRE(format_double(0.0) == "0");
    REQUIRE(format_double(0.5) == "0.5");
}
