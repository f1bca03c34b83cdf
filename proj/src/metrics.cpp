#include "lus/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lus {

void ScoredPredictions::validate() const {
    for (const ScoredRow& r : rows) {
        if (r.truth < 0 || r.truth > 3)
            raise(Errc::InvalidArgument, "scored row truth must be in {0..3}");
        for (double s : r.scores)
            if (!std::isfinite(s))
                raise(Errc::NonFiniteValue, "scored row contains a non-finite score");
    }
}

double accuracy(const std::vector<int>& preds, const std::vector<int>& truths) {
    if (preds.size() != truths.size())
        raise(Errc::LengthMismatch, "accuracy needs equally many predictions and truths");
    if (preds.empty())
        raise(Errc::EmptyInput, "accuracy of empty inputs");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        hits += preds[i] == truths[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double f1_score(const std::vector<int>& preds, const std::vector<int>& truths, int n_classes,
                F1Average average) {
    if (preds.size() != truths.size())
        raise(Errc::LengthMismatch, "f1 needs equally many predictions and truths");
    if (preds.empty())
        raise(Errc::EmptyInput, "f1 of empty inputs");
    std::vector<double> tp(static_cast<std::size_t>(n_classes), 0.0);
    std::vector<double> fp(static_cast<std::size_t>(n_classes), 0.0);
    std::vector<double> fn(static_cast<std::size_t>(n_classes), 0.0);
    std::vector<double> support(static_cast<std::size_t>(n_classes), 0.0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const int p = preds[i], t = truths[i];
        if (p < 0 || p >= n_classes || t < 0 || t >= n_classes)
            raise(Errc::InvalidArgument, "label outside [0, n_classes)");
        support[static_cast<std::size_t>(t)] += 1.0;
        if (p == t)
            tp[static_cast<std::size_t>(t)] += 1.0;
        else {
            fp[static_cast<std::size_t>(p)] += 1.0;
            fn[static_cast<std::size_t>(t)] += 1.0;
        }
    }
    double acc = 0.0, weight_sum = 0.0;
    for (int c = 0; c < n_classes; ++c) {
        const double denom = 2.0 * tp[static_cast<std::size_t>(c)] + fp[static_cast<std::size_t>(c)] + fn[static_cast<std::size_t>(c)];
        const double f1 = denom > 0.0 ? 2.0 * tp[static_cast<std::size_t>(c)] / denom : 0.0;
        const double w = average == F1Average::Macro ? 1.0 : support[static_cast<std::size_t>(c)];
        acc += w * f1;
        weight_sum += w;
    }
    return weight_sum > 0.0 ? acc / weight_sum : 0.0;
}

RocCurve roc_binary(const std::vector<double>& scores, const std::vector<bool>& positives) {
    if (scores.size() != positives.size())
        raise(Errc::LengthMismatch, "roc needs one score per label");
    std::size_t n_pos = 0;
    for (bool b : positives)
        n_pos += b ? 1 : 0;
    const std::size_t n_neg = scores.size() - n_pos;
    if (n_pos == 0 || n_neg == 0)
        raise(Errc::DegenerateClass, "roc needs at least one positive and one negative");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    std::size_t tp = 0, fp = 0;
    double auc = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double s = scores[order[i]];
        // consume the whole tie group before emitting a point
        while (i < order.size() && scores[order[i]] == s) {
            if (positives[order[i]])
                ++tp;
            else
                ++fp;
            ++i;
        }
        const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        const auto& prev = curve.points.back();
        auc += (fpr - prev.first) * (tpr + prev.second) * 0.5;
        curve.points.emplace_back(fpr, tpr);
    }
    curve.auc = auc;
    return curve;
}

MulticlassAuc auc_multiclass(const ScoredPredictions& sp) {
    sp.validate();
    if (sp.rows.empty())
        raise(Errc::EmptyInput, "auc of empty predictions");

    MulticlassAuc out;
    out.per_class.fill(std::numeric_limits<double>::quiet_NaN());
    double weighted_sum = 0.0, weight_total = 0.0, macro_sum = 0.0;
    int usable = 0;
    for (int c = 0; c < 4; ++c) {
        std::vector<double> scores;
        std::vector<bool> positives;
        std::size_t support = 0;
        scores.reserve(sp.rows.size());
        for (const ScoredRow& r : sp.rows) {
            scores.push_back(r.scores[static_cast<std::size_t>(c)]);
            const bool pos = r.truth == c;
            positives.push_back(pos);
            support += pos ? 1 : 0;
        }
        if (support == 0 || support == sp.rows.size()) {
            out.degenerate[static_cast<std::size_t>(c)] = true;
            out.warnings.push_back("class " + std::to_string(c) +
                                   " is degenerate (missing positives or negatives); excluded");
            continue;
        }
        const double auc = roc_binary(scores, positives).auc;
        out.per_class[static_cast<std::size_t>(c)] = auc;
        weighted_sum += static_cast<double>(support) * auc;
        weight_total += static_cast<double>(support);
        macro_sum += auc;
        ++usable;
    }
    if (usable == 0)
        raise(Errc::AllClassesDegenerate, "no class has both positives and negatives");
    out.weighted = weighted_sum / weight_total;
    out.macro = macro_sum / usable;
    return out;
}

} // namespace lus
