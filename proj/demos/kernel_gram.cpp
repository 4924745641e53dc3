// Smallest Gram eigenvalue of each catalog kernel on a fixed point set, plus
// the two-point example where the off-diagonal sum goes negative.
#include <cstdio>
#include <vector>

#include "fraclab/kernels.hpp"

int main() {
    using namespace fraclab::kernels;
    const std::vector<double> pts = {0.1, 0.23, 0.37, 0.5, 0.61, 0.78, 0.9};

    std::printf("%-20s %8s %14s\n", "kernel", "alpha", "min eig");
    for (auto kind : {KernelKind::CaputoPlain, KernelKind::CaputoTimeWeight, KernelKind::CaputoEndWeight, KernelKind::OmegaWeighted,
                      KernelKind::RatioTauOverS, KernelKind::ExpAbsDiff, KernelKind::BrownianBridge}) {
        const auto r = kernel_psd_check(KernelSpec::make(kind, 0.5), pts, 1e-8);
        std::printf("%-20s %8.2f %14.6e  %s\n", to_string(kind), 0.5, r.worst.min_eigenvalue, r.passed ? "psd" : "NOT psd");
    }

    const std::vector<double> two = {0.3, 0.6};
    const auto g = gram_matrix(KernelSpec::make(KernelKind::ExpAbsDiff), two);
    Eigen::Vector2d c(1.0, -1.0);
    std::printf("\nexp-abs at {0.3, 0.6}, c = (1,-1): off-diagonal %.6f, full form %.6f\n", off_diagonal_form(g, c), c.dot(g * c));
}
