#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "hotspot/error.hpp"

namespace hotspot {

/// Item-by-category count matrix: cell (i, c) is the number of raters who
/// put item i into category c. Every row sums to the rater count.
class RatingTable {
public:
    RatingTable(std::size_t categories, unsigned raters) : categories_(categories), raters_(raters) {
        if (categories_ < 1) throw Error(ErrorCode::InvalidInput, "rating table needs at least one category");
        if (raters_ < 2) throw Error(ErrorCode::InvalidInput, "rating table needs at least two raters");
    }

    /// Appends one item's category counts.
    void add_item(std::span<const unsigned> counts) {
        if (counts.size() != categories_) throw Error(ErrorCode::InputMismatch, "row width differs from category count");
        unsigned total = 0;
        for (unsigned c : counts) total += c;
        if (total != raters_) throw Error(ErrorCode::InvalidInput, "row does not sum to the number of raters");
        cells_.insert(cells_.end(), counts.begin(), counts.end());
    }

    /// Appends one item from the raters' category labels.
    void add_labels(std::span<const std::size_t> labels) {
        std::vector<unsigned> counts(categories_, 0);
        for (std::size_t label : labels) {
            if (label >= categories_) throw Error(ErrorCode::IdOutOfRange, "category label out of range");
            ++counts[label];
        }
        add_item(counts);
    }

    [[nodiscard]] std::size_t items() const noexcept { return cells_.size() / categories_; }
    [[nodiscard]] std::size_t categories() const noexcept { return categories_; }
    [[nodiscard]] unsigned raters() const noexcept { return raters_; }
    [[nodiscard]] unsigned at(std::size_t item, std::size_t category) const {
        return cells_.at(item * categories_ + category);
    }

private:
    std::size_t categories_;
    unsigned raters_;
    std::vector<unsigned> cells_;
};

struct KappaResult {
    double kappa = 0.0;
    /// NaN for categories nobody (or everybody) used.
    std::vector<double> per_category;
};

/// Fleiss' kappa with the category-wise decomposition.
inline KappaResult fleiss_kappa(const RatingTable& table) {
    const std::size_t n_items = table.items();
    const std::size_t k = table.categories();
    if (n_items < 2) throw Error(ErrorCode::InsufficientPoints, "kappa needs at least two items");
    const double n = table.raters();
    const double N = static_cast<double>(n_items);

    std::vector<double> column(k, 0.0);
    double sum_p_i = 0.0;
    for (std::size_t i = 0; i < n_items; ++i) {
        double sq = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double nic = table.at(i, c);
            sq += nic * nic;
            column[c] += nic;
        }
        sum_p_i += (sq - n) / (n * (n - 1.0));
    }
    const double p_bar = sum_p_i / N;

    double p_e = 0.0;
    std::vector<double> p(k);
    for (std::size_t c = 0; c < k; ++c) {
        p[c] = column[c] / (N * n);
        p_e += p[c] * p[c];
    }
    if (p_e >= 1.0) throw Error(ErrorCode::DegenerateMarginals, "all ratings fall in one category");

    KappaResult out;
    out.kappa = (p_bar - p_e) / (1.0 - p_e);
    out.per_category.assign(k, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 0; c < k; ++c) {
        if (p[c] <= 0.0 || p[c] >= 1.0) continue;
        double disagreement = 0.0;
        for (std::size_t i = 0; i < n_items; ++i) {
            const double nic = table.at(i, c);
            disagreement += nic * (n - nic);
        }
        out.per_category[c] = 1.0 - disagreement / (N * n * (n - 1.0) * p[c] * (1.0 - p[c]));
    }
    return out;
}

}  // namespace hotspot
