// Temporary exploration harness: operator identities and endpoint limits.

#include <cstdio>

#include "nwave/inverse_solver.hpp"
#include "nwave/random_potential.hpp"
#include "nwave/spectral_core.hpp"

using namespace nwave;

int main() {
    const auto D = DiagonalSpectrum::make({2.0, 1.0});
    const ConstantPotentialModel model(D, Complex(1.0, 0.0));
    const auto line = SpectralLine::make(5.0, 200.0, 0.05, model.m_bound());
    const WeylTable table = model.weyl_table(line);

    for (int N : {100, 200}) {
        const PiGrid pi = compute_Pi(table, D, 1.0, N);
        const KernelGrid kernel = build_kernel_s(pi, D);
        const auto S = assemble_S(kernel, D, 1.0);
        const double as_res = verify_identity_AS(S, pi, D, 1.0);
        const double min_eig = S.min_eigenvalue();
        const auto K = compute_K(S, pi, D, 1.0);
        const auto T = build_T(S, kernel, D, 1.0);
        std::printf("N=%d: sym_defect=%.2e AS=%.4f min_eig=%.4f KK*=%.3e id1=%.3e id2=%.3e Tsym=%.3e\n",
                    N, S.symmetrization_defect, as_res, min_eig, K.unitarity_defect,
                    K.first_identity, K.second_identity, T.symmetry_defect());
        std::printf("      resolvent product residual at (N/3,2N/3): %.3e\n",
                    resolvent_product_residual(T, K.K, D, N / 3, 2 * N / 3));
        // endpoint: Gamma(l,l) -> -i alpha_hat D^{1/2} as l -> 0
        const auto S0 = assemble_S(kernel, D, 0.0);
        const Matrix g0 = gamma_endpoint(S0, kernel, D, 0.0);
        const Matrix expect = -kI * alpha_hat(model.alpha()).alpha_hat * D.Dsqrt();
        std::printf("      Gamma(0,0) err=%.3e\n", frob(Matrix(g0 - expect)));
        // alpha_shifted consistency: alpha(l) route vs direct recovery at l=1
        const Matrix al = alpha_shifted(T.at(N, N), D);
        const Matrix zl = kI * (D.D() * al - al * D.D());
        const Matrix gl = gamma_endpoint(S, kernel, D, 1.0);
        const auto rec = recover_zeta_at(gl, D);
        std::printf("      zeta(l) cross-route diff=%.3e  alpha(l) skew defect=%.3e\n",
                    frob(Matrix(zl - rec.zeta)), frob(Matrix(al + al.adjoint())));
    }
    return 0;
}
