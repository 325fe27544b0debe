#include "fuzzyvis/su2.hpp"

#include <cmath>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

Su2Generators su2_generators(int n) {
    if (n < 1) throw ArgumentError("su2_generators: n must be >= 1");
    Su2Generators g;
    g.n = n;
    const double l = 0.5 * (n - 1);

    Matrix jplus(n, n);
    jplus.setZero();
    Matrix j3(n, n);
    j3.setZero();
    for (int i = 0; i < n; ++i) {
        const double m = l - i;
        j3(i, i) = m;
        if (i + 1 < n) {
            // raising operator maps weight m-1 (row i+1) to weight m (row i)
            const double mlow = l - (i + 1);
            jplus(i, i + 1) = std::sqrt(l * (l + 1.0) - mlow * (mlow + 1.0));
        }
    }
    const Matrix jminus = jplus.adjoint();
    const cxd iu(0.0, 1.0);

    g.J[0] = 0.5 * (jplus + jminus);
    g.J[1] = (jplus - jminus) / (2.0 * iu);
    g.J[2] = j3;
    for (int i = 0; i < 3; ++i) g.L[i] = -iu * g.J[i];
    return g;
}

}  // namespace fuzzyvis
