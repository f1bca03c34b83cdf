#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lus/image.hpp"

namespace lus {

struct ScoredRow {
    int truth = 0;                      // severity label in {0..3}
    std::array<double, 4> scores{};     // one-vs-all score per class
};

struct ScoredPredictions {
    std::vector<ScoredRow> rows;

    void validate() const;
};

struct RocCurve {
    std::vector<std::pair<double, double>> points; // (fpr, tpr), (0,0) .. (1,1)
    double auc = 0.0;
};

enum class F1Average { Macro, Weighted };

struct MulticlassAuc {
    double weighted = 0.0;
    double macro = 0.0;
    std::array<double, 4> per_class{}; // NaN where the class is degenerate
    std::array<bool, 4> degenerate{};
    std::vector<std::string> warnings;
};

// Fraction of exact label matches.
double accuracy(const std::vector<int>& preds, const std::vector<int>& truths);

// Per-class F1 = 2TP / (2TP + FP + FN), zero when undefined. Macro averages
// the classes equally; Weighted weighs them by truth support.
double f1_score(const std::vector<int>& preds, const std::vector<int>& truths, int n_classes = 4,
                F1Average average = F1Average::Macro);
inline double f1_macro(const std::vector<int>& preds, const std::vector<int>& truths,
                       int n_classes = 4) {
    return f1_score(preds, truths, n_classes, F1Average::Macro);
}

// ROC by sweeping distinct scores descending, one point per tie group, AUC
// by the trapezoidal rule. Equals the pairwise ranking statistic
// P(s+ > s-) + 0.5 P(s+ = s-).
RocCurve roc_binary(const std::vector<double>& scores, const std::vector<bool>& positives);

// One-vs-all AUC per class plus support-weighted and macro averages.
// Classes without both positives and negatives are excluded from the
// averages and reported in warnings.
MulticlassAuc auc_multiclass(const ScoredPredictions& sp);

} // namespace lus
