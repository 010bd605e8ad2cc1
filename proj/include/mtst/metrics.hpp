#pragma once

// Evaluation suite: accuracy + multiclass MCC on the main task, macro
// precision/recall/F1, MAE/MSE and macro Jaccard on the multi-label task.

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mtst {

struct ConfusionMatrix {
    size_t k = 0;
    std::vector<int64_t> counts;  // row-major, rows = true, cols = predicted

    explicit ConfusionMatrix(size_t k_ = 0) : k(k_), counts(k_ * k_, 0) {}

    int64_t& at(size_t t, size_t p) { return counts[t * k + p]; }
    int64_t at(size_t t, size_t p) const { return counts[t * k + p]; }
    void add(size_t t, size_t p) { ++at(t, p); }

    int64_t total() const {
        int64_t s = 0;
        for (int64_t c : counts) s += c;
        return s;
    }
};

// Binary MCC from the four cells: (TP*TN - FP*FN) / sqrt((TP+FP)(TP+FN)(TN+FP)(TN+FN)).
inline double mcc_binary(double tp, double tn, double fp, double fn) {
    double denom = std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
    if (denom == 0.0) return 0.0;
    return (tp * tn - fp * fn) / denom;
}

// Multiclass MCC (the R_K statistic). For k = 2 this reduces exactly to the
// binary formula above.
inline double mcc(const ConfusionMatrix& cm) {
    if (cm.k == 0) throw std::invalid_argument("mcc: empty confusion matrix");
    double s = 0.0, c = 0.0;
    std::vector<double> t(cm.k, 0.0), p(cm.k, 0.0);
    for (size_t i = 0; i < cm.k; ++i) {
        c += static_cast<double>(cm.at(i, i));
        for (size_t j = 0; j < cm.k; ++j) {
            double v = static_cast<double>(cm.at(i, j));
            s += v;
            t[i] += v;
            p[j] += v;
        }
    }
    double tp_dot = 0.0, pp = 0.0, tt = 0.0;
    for (size_t i = 0; i < cm.k; ++i) {
        tp_dot += t[i] * p[i];
        pp += p[i] * p[i];
        tt += t[i] * t[i];
    }
    double denom = std::sqrt(s * s - pp) * std::sqrt(s * s - tt);
    if (denom == 0.0) return 0.0;
    return (c * s - tp_dot) / denom;
}

inline double accuracy(const ConfusionMatrix& cm) {
    int64_t n = cm.total();
    if (n == 0) return 0.0;
    int64_t diag = 0;
    for (size_t i = 0; i < cm.k; ++i) diag += cm.at(i, i);
    return static_cast<double>(diag) / static_cast<double>(n);
}

// Mean per-sample intersection-over-union of the label sets. A sample where
// both sets are empty counts as 1 (predicting "no categories" correctly).
inline double jaccard_macro(const std::vector<std::vector<uint8_t>>& truth,
                            const std::vector<std::vector<uint8_t>>& pred) {
    if (truth.size() != pred.size()) throw std::invalid_argument("jaccard_macro: length mismatch");
    if (truth.empty()) return 0.0;
    double sum = 0.0;
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i].size() != pred[i].size()) throw std::invalid_argument("jaccard_macro: width mismatch");
        int64_t inter = 0, uni = 0;
        for (size_t k = 0; k < truth[i].size(); ++k) {
            inter += (truth[i][k] && pred[i][k]) ? 1 : 0;
            uni += (truth[i][k] || pred[i][k]) ? 1 : 0;
        }
        sum += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
    }
    return sum / static_cast<double>(truth.size());
}

struct Prf {
    double precision = 0.0, recall = 0.0, f1 = 0.0;
};

// Macro-averaged precision/recall/F1 over labels, 0/0 -> 0 convention.
inline Prf prf_macro(const std::vector<std::vector<uint8_t>>& truth,
                     const std::vector<std::vector<uint8_t>>& pred) {
    if (truth.size() != pred.size()) throw std::invalid_argument("prf_macro: shape mismatch");
    if (truth.empty()) return {};
    const size_t c = truth[0].size();
    Prf out;
    for (size_t label = 0; label < c; ++label) {
        int64_t tp = 0, fp = 0, fn = 0;
        for (size_t i = 0; i < truth.size(); ++i) {
            if (truth[i].size() != c || pred[i].size() != c)
                throw std::invalid_argument("prf_macro: shape mismatch");
            bool t = truth[i][label], p = pred[i][label];
            tp += (t && p) ? 1 : 0;
            fp += (!t && p) ? 1 : 0;
            fn += (t && !p) ? 1 : 0;
        }
        double prec = (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
        double rec = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
        double f1 = (prec + rec) == 0.0 ? 0.0 : 2.0 * prec * rec / (prec + rec);
        out.precision += prec;
        out.recall += rec;
        out.f1 += f1;
    }
    out.precision /= static_cast<double>(c);
    out.recall /= static_cast<double>(c);
    out.f1 /= static_cast<double>(c);
    return out;
}

// Mean absolute / squared deviation over all N*C cells of the probabilistic
// multi-label outputs.
inline std::pair<double, double> mae_mse(const std::vector<std::vector<uint8_t>>& truth,
                                         const std::vector<std::vector<double>>& probs) {
    if (truth.size() != probs.size()) throw std::invalid_argument("mae_mse: shape mismatch");
    double abs_sum = 0.0, sq_sum = 0.0;
    size_t cells = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i].size() != probs[i].size()) throw std::invalid_argument("mae_mse: shape mismatch");
        for (size_t k = 0; k < truth[i].size(); ++k) {
            double d = probs[i][k] - static_cast<double>(truth[i][k]);
            abs_sum += std::abs(d);
            sq_sum += d * d;
            ++cells;
        }
    }
    if (cells == 0) return {0.0, 0.0};
    return {abs_sum / static_cast<double>(cells), sq_sum / static_cast<double>(cells)};
}

// --- report ------------------------------------------------------------------

struct MultiMetrics {
    double precision_macro = 0.0, recall_macro = 0.0, f1_macro = 0.0;
    double mae = 0.0, mse = 0.0, jaccard_macro = 0.0;
};

struct MetricsReport {
    size_t n_samples = 0;
    double accuracy = 0.0;
    double mcc = 0.0;
    std::optional<MultiMetrics> multi;
    ConfusionMatrix confusion;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n_samples"] = n_samples;
        j["main"] = {{"accuracy", accuracy}, {"mcc", mcc}};
        if (multi) {
            j["multi"] = {{"precision_macro", multi->precision_macro},
                          {"recall_macro", multi->recall_macro},
                          {"f1_macro", multi->f1_macro},
                          {"mae", multi->mae},
                          {"mse", multi->mse},
                          {"jaccard_macro", multi->jaccard_macro}};
        }
        auto rows = nlohmann::ordered_json::array();
        for (size_t i = 0; i < confusion.k; ++i) {
            auto row = nlohmann::ordered_json::array();
            for (size_t jdx = 0; jdx < confusion.k; ++jdx) row.push_back(confusion.at(i, jdx));
            rows.push_back(std::move(row));
        }
        j["confusion"] = std::move(rows);
        return j;
    }

    static MetricsReport from_json(const nlohmann::ordered_json& j) {
        MetricsReport r;
        r.n_samples = j.at("n_samples").get<size_t>();
        r.accuracy = j.at("main").at("accuracy").get<double>();
        r.mcc = j.at("main").at("mcc").get<double>();
        if (j.contains("multi")) {
            MultiMetrics m;
            const auto& jm = j.at("multi");
            m.precision_macro = jm.at("precision_macro").get<double>();
            m.recall_macro = jm.at("recall_macro").get<double>();
            m.f1_macro = jm.at("f1_macro").get<double>();
            m.mae = jm.at("mae").get<double>();
            m.mse = jm.at("mse").get<double>();
            m.jaccard_macro = jm.at("jaccard_macro").get<double>();
            r.multi = m;
        }
        const auto& rows = j.at("confusion");
        r.confusion = ConfusionMatrix(rows.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t c = 0; c < rows[i].size(); ++c)
                r.confusion.at(i, c) = rows[i][c].get<int64_t>();
        return r;
    }

    static std::string csv_header() {
        return "n_samples,accuracy,mcc,precision_macro,recall_macro,f1_macro,mae,mse,jaccard_macro";
    }

    std::string csv_row() const {
        std::ostringstream os;
        os.precision(17);
        os << n_samples << ',' << accuracy << ',' << mcc << ',';
        if (multi) {
            os << multi->precision_macro << ',' << multi->recall_macro << ',' << multi->f1_macro << ','
               << multi->mae << ',' << multi->mse << ',' << multi->jaccard_macro;
        } else {
            os << ",,,,,";
        }
        return os.str();
    }
};

// Streaming accumulator used by model evaluation.
class MetricsAccumulator {
public:
    explicit MetricsAccumulator(size_t num_main, bool with_multi)
        : cm_(num_main), with_multi_(with_multi) {}

    void add_main(int truth, int pred) { cm_.add(static_cast<size_t>(truth), static_cast<size_t>(pred)); }

    void add_multi(const std::vector<uint8_t>& truth, const std::vector<uint8_t>& pred,
                   const std::vector<double>& probs) {
        multi_truth_.push_back(truth);
        multi_pred_.push_back(pred);
        multi_probs_.push_back(probs);
    }

    void count_sample() { ++n_; }

    MetricsReport report() const {
        MetricsReport r;
        r.n_samples = n_;
        r.confusion = cm_;
        r.accuracy = accuracy(cm_);
        r.mcc = mtst::mcc(cm_);
        if (with_multi_ && !multi_truth_.empty()) {
            MultiMetrics m;
            Prf prf = prf_macro(multi_truth_, multi_pred_);
            m.precision_macro = prf.precision;
            m.recall_macro = prf.recall;
            m.f1_macro = prf.f1;
            auto [mae, mse] = mae_mse(multi_truth_, multi_probs_);
            m.mae = mae;
            m.mse = mse;
            m.jaccard_macro = mtst::jaccard_macro(multi_truth_, multi_pred_);
            r.multi = m;
        }
        return r;
    }

private:
    ConfusionMatrix cm_;
    bool with_multi_;
    size_t n_ = 0;
    std::vector<std::vector<uint8_t>> multi_truth_, multi_pred_;
    std::vector<std::vector<double>> multi_probs_;
};

}  // namespace mtst
