#ifndef QC_DATASET_HPP
#define QC_DATASET_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace qc {

// Immutable-by-convention table of bivariate responses plus one covariate.
// Every fitter in the library consumes this.
struct Dataset {
    std::vector<double> y1;
    std::vector<double> y2;
    std::vector<double> x;
    std::string y1_name = "y1";
    std::string y2_name = "y2";
    std::string x_name = "x";

    std::size_t n() const { return y1.size(); }

    // Throws InvalidArgument on length mismatch, NaN/Inf, or empty table.
    void validate() const;

    // Responses exchanged; covariate untouched.
    Dataset swapped() const;
};

}  // namespace qc

#endif  // QC_DATASET_HPP
