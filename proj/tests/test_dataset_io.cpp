#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hbmlr/dataset_io.hpp"
#include "hbmlr/rng.hpp"
#include "oracles.hpp"

using namespace hbmlr;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/hbmlr_test_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_csv: well-formed file") {
    TempFile f("ok.csv", "1,0.5,2.25\n2,1e-3,-4.5\n1,3,0.125\n");
    const Dataset d = load_csv(f.path, false);
    CHECK(d.n() == 3);
    CHECK(d.p() == 2);
    CHECK(d.class_count == 2);
    CHECK(d.features(1, 0) == 1e-3);
    CHECK(d.labels[1] == 2);
}

TEST_CASE("load_csv: header row and CRLF endings") {
    TempFile f("crlf.csv", "label,x1\r\n1,0.5\r\n2,1.5\r\n");
    const Dataset d = load_csv(f.path, true);
    CHECK(d.n() == 2);
    CHECK(d.p() == 1);
    CHECK(d.features(1, 0) == 1.5);
}

TEST_CASE("load_csv: bad inputs carry row and column context") {
    TempFile zero_label("lbl.csv", "1,0.5\n0,1.5\n");
    try {
        load_csv(zero_label.path, false);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row == 2);
        CHECK(e.col == 1);
    }

    TempFile ragged("rag.csv", "1,0.5,2\n2,1.5\n");
    try {
        load_csv(ragged.path, false);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row == 2);
    }

    TempFile missing("miss.csv", "1,0.5\n2,\n");
    CHECK_THROWS_AS(load_csv(missing.path, false), ParseError);

    TempFile garbage("garbage.csv", "1,0.5\n2,zebra\n");
    try {
        load_csv(garbage.path, false);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row == 2);
        CHECK(e.col == 2);
    }

    CHECK_THROWS_AS(load_csv("/tmp/hbmlr_does_not_exist.csv", false), Error);
}

TEST_CASE("save_csv / load_csv round trip is value-exact") {
    Rng rng(3);
    Dataset d;
    d.features.resize(5, 3);
    for (Index i = 0; i < d.features.size(); ++i)
        d.features.data()[i] = draw_normal(rng) * std::exp(10 * draw_normal(rng));
    d.labels.resize(5);
    d.labels << 1, 2, 3, 1, 2;
    d.class_count = 3;

    const std::string path = "/tmp/hbmlr_test_roundtrip.csv";
    save_csv(d, path);
    const Dataset back = load_csv(path, false);
    std::remove(path.c_str());
    REQUIRE(back.n() == d.n());
    REQUIRE(back.p() == d.p());
    for (Index i = 0; i < d.n(); ++i) {
        CHECK(back.labels[i] == d.labels[i]);
        for (Index j = 0; j < d.p(); ++j) CHECK(back.features(i, j) == d.features(i, j));
    }
}

TEST_CASE("standardize: training columns get mean 0, sd 1 (population)") {
    Rng rng(5);
    Dataset raw;
    raw.features.resize(40, 3);
    for (Index i = 0; i < raw.features.size(); ++i)
        raw.features.data()[i] = 2.0 + 3.0 * draw_normal(rng);
    raw.labels = IntVector::Ones(40);
    raw.labels[0] = 2;
    raw.class_count = 2;

    auto [train, others] = standardize(raw, {});
    CHECK(others.empty());
    CHECK(train.standardized);
    for (Index j = 0; j < 3; ++j) {
        CHECK(std::abs(train.features.col(j).mean()) < 1e-10);
        const double sd = std::sqrt(train.features.col(j).array().square().sum() / train.n());
        CHECK(std::abs(sd - 1.0) < 1e-10);
    }
    CHECK_NOTHROW(train.validate());

    // idempotent: a second standardization changes nothing
    auto [again, rest] = standardize(train, {});
    (void)rest;
    CHECK((again.features - train.features).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("standardize: constant column maps to zeros with sd 1") {
    Dataset raw;
    raw.features.resize(4, 2);
    raw.features.col(0).setConstant(7.0);
    raw.features.col(1) << 1, 2, 3, 4;
    raw.labels.resize(4);
    raw.labels << 1, 2, 1, 2;
    raw.class_count = 2;

    auto [train, rest] = standardize(raw, {});
    (void)rest;
    CHECK(train.features.col(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(train.train_sds[0] == 1.0);
    CHECK_NOTHROW(train.validate());
}

TEST_CASE("standardize: test columns use the train map, not their own") {
    Dataset train_raw;
    train_raw.features.resize(2, 1);
    train_raw.features << 0.0, 2.0;  // mean 1, population sd 1
    train_raw.labels.resize(2);
    train_raw.labels << 1, 2;
    train_raw.class_count = 2;

    Dataset test_raw = train_raw;
    test_raw.features << 5.0, 9.0;  // own mean 7, sd 2: must NOT be used

    auto [train, others] = standardize(train_raw, {test_raw});
    CHECK(train.features(0, 0) == doctest::Approx(-1.0));
    CHECK(train.features(1, 0) == doctest::Approx(1.0));
    // (x - 1) / 1 under the train map
    CHECK(others[0].features(0, 0) == doctest::Approx(4.0));
    CHECK(others[0].features(1, 0) == doctest::Approx(8.0));
    CHECK(others[0].standardized);
    CHECK_FALSE(others[0].own_standardization);
}
