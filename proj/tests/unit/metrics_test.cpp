#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mtst/metrics.hpp"
#include "mtst/rng.hpp"

using namespace mtst;
using Catch::Matchers::WithinAbs;

namespace {

// Brute-force oracles, written independently of the library implementations.

double oracle_jaccard(const std::vector<std::vector<uint8_t>>& t,
                      const std::vector<std::vector<uint8_t>>& p) {
    double acc = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        int inter = 0, uni = 0;
        for (size_t k = 0; k < t[i].size(); ++k) {
            if (t[i][k] == 1 && p[i][k] == 1) ++inter;
            if (t[i][k] == 1 || p[i][k] == 1) ++uni;
        }
        acc += (uni == 0) ? 1.0 : double(inter) / double(uni);
    }
    return acc / double(t.size());
}

Prf oracle_prf(const std::vector<std::vector<uint8_t>>& t, const std::vector<std::vector<uint8_t>>& p) {
    size_t c = t[0].size();
    double sp = 0, sr = 0, sf = 0;
    for (size_t label = 0; label < c; ++label) {
        double tp = 0, fp = 0, fn = 0;
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i][label] && p[i][label]) tp += 1;
            if (!t[i][label] && p[i][label]) fp += 1;
            if (t[i][label] && !p[i][label]) fn += 1;
        }
        double prec = (tp + fp > 0) ? tp / (tp + fp) : 0.0;
        double rec = (tp + fn > 0) ? tp / (tp + fn) : 0.0;
        double f1 = (prec + rec > 0) ? 2 * prec * rec / (prec + rec) : 0.0;
        sp += prec;
        sr += rec;
        sf += f1;
    }
    return {sp / double(c), sr / double(c), sf / double(c)};
}

std::pair<double, double> oracle_mae_mse(const std::vector<std::vector<uint8_t>>& t,
                                         const std::vector<std::vector<double>>& probs) {
    double sa = 0, sq = 0;
    size_t n = 0;
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t k = 0; k < t[i].size(); ++k) {
            double d = probs[i][k] - double(t[i][k]);
            sa += std::fabs(d);
            sq += d * d;
            ++n;
        }
    return {sa / double(n), sq / double(n)};
}

}  // namespace

TEST_CASE("binary mcc hand values") {
    CHECK_THAT(mcc_binary(3, 4, 1, 2), WithinAbs(10.0 / std::sqrt(600.0), 1e-12));
    CHECK_THAT(mcc_binary(1, 1, 1, 1), WithinAbs(0.0, 1e-15));
    CHECK(mcc_binary(0, 0, 0, 0) == 0.0);  // degenerate denominator
}

TEST_CASE("multiclass mcc reduces to the binary formula on 2x2 matrices") {
    Rng rng(99);
    for (int iter = 0; iter < 1000; ++iter) {
        ConfusionMatrix cm(2);
        // row 0 = true positive class: [TP, FN; FP, TN]
        double tp = double(rng.below(50)), fn = double(rng.below(50));
        double fp = double(rng.below(50)), tn = double(rng.below(50));
        cm.at(0, 0) = int64_t(tp);
        cm.at(0, 1) = int64_t(fn);
        cm.at(1, 0) = int64_t(fp);
        cm.at(1, 1) = int64_t(tn);
        CAPTURE(tp, fn, fp, tn);
        REQUIRE_THAT(mcc(cm), WithinAbs(mcc_binary(tp, tn, fp, fn), 1e-12));
    }
}

TEST_CASE("mcc endpoints") {
    ConfusionMatrix perfect(3);
    perfect.at(0, 0) = 5;
    perfect.at(1, 1) = 7;
    perfect.at(2, 2) = 3;
    CHECK_THAT(mcc(perfect), WithinAbs(1.0, 1e-12));
    CHECK_THAT(accuracy(perfect), WithinAbs(1.0, 1e-15));

    ConfusionMatrix anti(2);
    anti.at(0, 1) = 4;
    anti.at(1, 0) = 4;
    CHECK_THAT(mcc(anti), WithinAbs(-1.0, 1e-12));

    // constant predictor on balanced data: no information
    ConfusionMatrix constant(3);
    constant.at(0, 0) = 10;
    constant.at(1, 0) = 10;
    constant.at(2, 0) = 10;
    CHECK_THAT(mcc(constant), WithinAbs(0.0, 1e-9));

    CHECK_THROWS_AS(mcc(ConfusionMatrix(0)), std::invalid_argument);
}

TEST_CASE("jaccard hand values") {
    // y={a,b}, yhat={b,c} -> 1/3
    std::vector<std::vector<uint8_t>> t{{1, 1, 0}}, p{{0, 1, 1}};
    CHECK_THAT(jaccard_macro(t, p), WithinAbs(1.0 / 3.0, 1e-12));

    std::vector<std::vector<uint8_t>> same{{1, 0, 1}, {0, 1, 0}};
    CHECK_THAT(jaccard_macro(same, same), WithinAbs(1.0, 1e-15));

    std::vector<std::vector<uint8_t>> a{{1, 0}}, b{{0, 1}};
    CHECK_THAT(jaccard_macro(a, b), WithinAbs(0.0, 1e-15));

    std::vector<std::vector<uint8_t>> both_empty{{0, 0}};
    CHECK_THAT(jaccard_macro(both_empty, both_empty), WithinAbs(1.0, 1e-15));
}

TEST_CASE("prf_macro conventions") {
    // pred == true -> all ones
    std::vector<std::vector<uint8_t>> t{{1, 0}, {0, 1}, {1, 1}, {0, 0}};
    auto perfect = prf_macro(t, t);
    CHECK_THAT(perfect.precision, WithinAbs(1.0, 1e-15));
    CHECK_THAT(perfect.recall, WithinAbs(1.0, 1e-15));
    CHECK_THAT(perfect.f1, WithinAbs(1.0, 1e-15));

    // label 1 never predicted: precision 0 enters the macro mean
    std::vector<std::vector<uint8_t>> p{{1, 0}, {0, 0}, {1, 0}, {0, 0}};
    auto r = prf_macro(t, p);
    // label 0: tp=2 fp=0 fn=0 -> P=R=F=1; label 1: tp=0 fp=0 fn=2 -> all 0
    CHECK_THAT(r.precision, WithinAbs(0.5, 1e-12));
    CHECK_THAT(r.recall, WithinAbs(0.5, 1e-12));
    CHECK_THAT(r.f1, WithinAbs(0.5, 1e-12));
}

TEST_CASE("mae_mse hand values") {
    std::vector<std::vector<uint8_t>> t{{1, 0}, {0, 1}};
    std::vector<std::vector<double>> exact{{1.0, 0.0}, {0.0, 1.0}};
    auto [mae0, mse0] = mae_mse(t, exact);
    CHECK_THAT(mae0, WithinAbs(0.0, 1e-15));
    CHECK_THAT(mse0, WithinAbs(0.0, 1e-15));

    std::vector<std::vector<double>> half{{0.5, 0.5}, {0.5, 0.5}};
    auto [mae1, mse1] = mae_mse(t, half);
    CHECK_THAT(mae1, WithinAbs(0.5, 1e-15));
    CHECK_THAT(mse1, WithinAbs(0.25, 1e-15));
}

TEST_CASE("random instances match brute-force oracles") {
    Rng rng(1234);
    for (int iter = 0; iter < 200; ++iter) {
        size_t n = 1 + rng.below(10), c = 1 + rng.below(5);
        std::vector<std::vector<uint8_t>> t(n, std::vector<uint8_t>(c));
        std::vector<std::vector<uint8_t>> p(n, std::vector<uint8_t>(c));
        std::vector<std::vector<double>> probs(n, std::vector<double>(c));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < c; ++k) {
                t[i][k] = uint8_t(rng.below(2));
                p[i][k] = uint8_t(rng.below(2));
                probs[i][k] = rng.uniform();
            }
        REQUIRE_THAT(jaccard_macro(t, p), WithinAbs(oracle_jaccard(t, p), 1e-12));
        auto lib = prf_macro(t, p);
        auto ora = oracle_prf(t, p);
        REQUIRE_THAT(lib.precision, WithinAbs(ora.precision, 1e-12));
        REQUIRE_THAT(lib.recall, WithinAbs(ora.recall, 1e-12));
        REQUIRE_THAT(lib.f1, WithinAbs(ora.f1, 1e-12));
        auto [mae, mse] = mae_mse(t, probs);
        auto [omae, omse] = oracle_mae_mse(t, probs);
        REQUIRE_THAT(mae, WithinAbs(omae, 1e-12));
        REQUIRE_THAT(mse, WithinAbs(omse, 1e-12));
    }
}

TEST_CASE("metrics are invariant to sample order") {
    Rng rng(777);
    size_t n = 20, c = 4;
    std::vector<std::vector<uint8_t>> t(n, std::vector<uint8_t>(c)), p(n, std::vector<uint8_t>(c));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < c; ++k) {
            t[i][k] = uint8_t(rng.below(2));
            p[i][k] = uint8_t(rng.below(2));
        }
    double j1 = jaccard_macro(t, p);
    auto f1 = prf_macro(t, p).f1;

    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<std::vector<uint8_t>> t2, p2;
    for (size_t i : perm) {
        t2.push_back(t[i]);
        p2.push_back(p[i]);
    }
    CHECK_THAT(jaccard_macro(t2, p2), WithinAbs(j1, 1e-12));
    CHECK_THAT(prf_macro(t2, p2).f1, WithinAbs(f1, 1e-12));
}

TEST_CASE("report JSON round-trips losslessly") {
    MetricsReport r;
    r.n_samples = 12;
    r.accuracy = 0.75;
    r.mcc = 0.4082482904638631;
    MultiMetrics m;
    m.precision_macro = 0.9;
    m.recall_macro = 0.8;
    m.f1_macro = 0.8470588235294118;
    m.mae = 0.125;
    m.mse = 0.0625;
    m.jaccard_macro = 1.0 / 3.0;
    r.multi = m;
    r.confusion = ConfusionMatrix(2);
    r.confusion.at(0, 0) = 5;
    r.confusion.at(1, 1) = 4;
    r.confusion.at(0, 1) = 3;

    auto j = r.to_json();
    auto back = MetricsReport::from_json(j);
    CHECK(back.to_json().dump() == j.dump());

    MetricsReport no_multi;
    no_multi.n_samples = 3;
    no_multi.confusion = ConfusionMatrix(3);
    auto j2 = no_multi.to_json();
    CHECK_FALSE(j2.contains("multi"));
    CHECK(MetricsReport::from_json(j2).to_json().dump() == j2.dump());
}

TEST_CASE("csv row shape matches header") {
    MetricsReport r;
    r.n_samples = 5;
    r.confusion = ConfusionMatrix(3);
    auto count_commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
    CHECK(count_commas(MetricsReport::csv_header()) == count_commas(r.csv_row()));
    r.multi = MultiMetrics{};
    CHECK(count_commas(MetricsReport::csv_header()) == count_commas(r.csv_row()));
}
