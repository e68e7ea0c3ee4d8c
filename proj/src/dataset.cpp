#include "qc/dataset.hpp"

#include <cmath>

#include "qc/errors.hpp"

namespace qc {

void Dataset::validate() const {
    if (y1.empty()) throw InvalidArgument("dataset is empty");
    if (y2.size() != y1.size() || x.size() != y1.size())
        throw InvalidArgument("dataset columns have unequal lengths");
    for (std::size_t i = 0; i < y1.size(); ++i) {
        if (!std::isfinite(y1[i]) || !std::isfinite(y2[i]) || !std::isfinite(x[i]))
            throw InvalidArgument("dataset contains NaN/Inf at row " + std::to_string(i + 1));
    }
}

Dataset Dataset::swapped() const {
    Dataset out = *this;
    out.y1 = y2;
    out.y2 = y1;
    out.y1_name = y2_name;
    out.y2_name = y1_name;
    return out;
}

}  // namespace qc
