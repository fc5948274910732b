#pragma once

// Generated by generate.py (mpmath, 50 digits). Do not edit.

#include <complex>

namespace oracle {

using C = std::complex<double>;

struct KummerCase {
    C a, b, z, value;
};

inline const KummerCase kummer[] = {
    {{5.0000000000000000000e-1, 0.0}, {1.5000000000000000000, 0.0}, {2.0000000000000000000, 1.0000000000000000000}, {1.9360411765799728344, 1.1410141332588829270}},
    {{-2.5000000000000000000, 0.0}, {3.0000000000000000000, 0.0}, {1.0000000000000000000e+1, 0.0}, {9.9256622032217739577e-1, 0.0}},
    {{1.0000000000000000000, 2.0000000000000000000}, {3.0000000000000000000, 0.0}, {0.0, -2.0000000000000000000e+1}, {6.8228597516939128373, 2.5465886368537695894}},
    {{2.0000000000000000000, -1.0000000000000000000}, {4.0000000000000000000, 0.0}, {-5.0000000000000000000, 3.0000000000000000000}, {-8.3433079259212876355e-2, 2.1987391948097387326e-1}},
    {{1.0000000000000000000, 0.0}, {2.0000000000000000000, 0.0}, {-3.0000000000000000000e+1, 0.0}, {3.3333333333330214126e-2, 0.0}},
    {{2.5000000000000000000e-1, 0.0}, {7.5000000000000000000e-1, 0.0}, {4.0000000000000000000e+1, -7.0000000000000000000}, {1.0193808527350144695e+16, -7.4091416548462549238e+15}},
    {{1.9624940645653536767, -3.3333333333333333333e-1}, {3.9249881291307073535, 0.0}, {0.0, -2.0000000000000000000}, {4.0823749037477155531e-1, -6.3579222100340051800e-1}},
    {{1.9624940645653536767, -3.3333333333333333333e-1}, {3.9249881291307073535, 0.0}, {0.0, -2.0000000000000000000e+1}, {4.0228963689115953558e-4, -2.6082884185296771576e-4}},
    {{2.9776781245530842538, -3.3333333333333333333e-1}, {5.9553562491061685075, 0.0}, {0.0, -2.0000000000000000000e+2}, {-6.9834217581646447287e-6, -4.1007624318039461743e-6}},
    {{4.9876373392787533594, -3.3333333333333333333e-1}, {9.9752746785575067188, 0.0}, {0.0, -2.0000000000000000000e+3}, {3.5836314422939482345e-14, -5.2690998747405646177e-14}},
    {{3.9999923886569241385, -7.2992700729927007299e-3}, {7.9999847773138482771, 0.0}, {0.0, -1.5000000000000000000e+2}, {2.8984890181401338602e-6, 1.2193970852964436666e-6}},
};

struct LogGammaCase {
    C z, value;
};

inline const LogGammaCase log_gamma[] = {
    {{5.0000000000000000000e-1, 5.0000000000000000000e-1}, {1.1238724280962311252e-1, -7.5072920212205074465e-1}},
    {{1.0000000000000000000e-3, 1.0000000000000000000e+1}, {-1.5938013864475986562e+1, 1.2233737393845133595e+1}},
    {{-2.5000000000000000000, 1.0000000000000000000e-1}, {-1.0314924404281919777e-1, -9.3144442683598381211}},
    {{1.0000000000000000000e+2, 2.0000000000000000000e+2}, {2.1777333129070926905e+2, 9.9213879252816253930e+2}},
    {{1.3333333333333333333, -3.3333333333333333333e-1}, {-1.7297527123477543682e-1, 3.7286189693372337566e-2}},
    {{1.0000000000000000000, 0.0}, {0.0, 0.0}},
    {{7.2500000000000000000, -5.0000000000000000000e-1}, {7.0337172632153943791, -9.5568079590993012860e-1}},
    {{1.3900000000000000000e+2, -7.3000000000000000000e-3}, {5.4534417759877303816e+2, -3.5995369236988330716e-2}},
};

struct BesselCase {
    int l;
    double x, value;
};

inline const BesselCase spherical_bessel[] = {
    {0, 1.0000000000000000000e-3, 9.9999983333334166667e-1},
    {1, 1.0000000000000000000, 3.0116867893975678925e-1},
    {5, 1.0000000000000000000e+1, -5.5534511621452180909e-2},
    {10, 5.0000000000000000000e+1, -1.5039221463465960582e-2},
    {3, 1.0000000000000000000e-1, 9.5185197208655670454e-6},
    {0, 2.5500000000000000000e+1, 1.4080719765575226776e-2},
    {7, 3.7500000000000000000, 3.3697942954021172877e-3},
    {10, 5.0000000000000000000e-1, 7.0641239636618781840e-14},
};

struct LegendreCase {
    int l, m;
    double x, value;
};

inline const LegendreCase legendre[] = {
    {5, 3, 3.0000000000000000000e-1, 8.6591446160619698938},
    {10, -4, -7.0000000000000000000e-1, -1.3153005657087053571e-5},
    {1, 1, 6.0000000000000000000e-1, -8.0000000000000000000e-1},
    {20, 20, 0.0, 3.1983098677287777082e+23},
    {12, 0, 9.9000000000000000000e-1, 3.5818551212422409841e-1},
    {7, 3, 0.0, -1.1812500000000000000e+2},
};

struct RadialCase {
    int l;
    double omega, beta, r, value;
};

inline const RadialCase radial[] = {
    {1, 1, 3.3333333333333333333e-1, 2, 8.5017761801299473585e-1},
    {3, 7.0000000000000000000e-1, 3.3333333333333333333e-1, 20, -1.0726448110599427371e+1},
    {2, 1, 3.3333333333333333333e-1, 100, -7.3072948218376131410e-2},
    {0, 1.5000000000000000000, 2.0000000000000000000e-1, 4.0000000000000000000e-1, 8.5622917962834505834e-1},
};

struct OrbitCase {
    double alpha, n;
    double r, v, P, E, omega_plus, omega_minus, k_plus, k_minus, Omega_p, period;
};

inline const OrbitCase orbits[] = {
    {7.2992700729927007299e-3, 1.0000000000000000000, 1.3699635031634966880e+2, 7.2992700729927007299e-3, 7.2994645309222969312e-3, 9.9997335997335524675e-1, 1.0072728245042775437, 9.9267389544243294982e-1, 1.0073261052672769765, 9.9272717620543238264e-1, 9.9994671781756180733e-1, 1.1792596339595345540e+5},
    {7.2992700729927007299e-3, 2.0000000000000000000, 5.4799635035281028777e+2, 3.6496350364963503650e-3, 3.6496593430090595256e-3, 9.9999334005987278789e-1, 1.0036429994028818474, 9.9634368071686372837e-1, 1.0036563193274913695, 9.9635700064147325048e-1, 9.9998667998667998668e-1, 9.4342655703739920045e+5},
    {7.2992700729927007299e-3, 1.0000000000000000000e+1, 1.3699996350364477378e+4, 7.2992700729927007299e-4, 7.2992720174950689292e-4, 9.9999973360324652395e-1, 1.0007296608049960308, 9.9926980640149701706e-1, 1.0007301935985739502, 9.9927033919507493641e-1, 9.9999946720628014613e-1, 1.1792907361452293814e+8},
    {3.3333333333333333333e-1, 1.0000000000000000000, 2.8284271247461900976, 3.3333333333333333333e-1, 3.5355339059327376220e-1, 9.4280904158206336587e-1, 1.2963624321753371281, 5.8925565098878960367e-1, 1.4142135623730950488, 7.0710678118654752440e-1, 8.7500000000000000000e-1, 5.3314595257900394964e+1},
    {3.3333333333333333333e-1, 3.0000000000000000000, 2.6832815729997476357e+1, 1.1111111111111111111e-1, 1.1180339887498948482e-1, 9.9380798999990653174e-1, 1.1056113888748960166, 8.8200459112491704692e-1, 1.1180339887498948482, 8.9442719099991587856e-1, 9.8750000000000000000e-1, 1.5173599819047969009e+3},
    {7.2992700729927007299e-3, 5.0000000000000000000e-1, 3.4246350170492621417e+1, 1.4598540145985401460e-2, 1.4600095995946761062e-2, 9.9989343563482106327e-1, 1.0144935316307678243, 9.8529333963887430221e-1, 1.0147066717182998938, 9.8550647972640637171e-1, 9.9978683719690913936e-1, 1.4739567248779996017e+4},
};

inline constexpr double ground_energy_offset = -3.5484550981658154884e-10;

struct QuantumPotentialCase {
    double alpha, n, xi, q_plus, q_minus;
};

inline const QuantumPotentialCase quantum_potential[] = {
    {7.2992700729927007299e-3, 1.0000000000000000000, 2.0000000000000000000, 1.0734504579548081246e-4, 1.0578936163670146448e-4},
    {7.2992700729927007299e-3, 2.0000000000000000000, 3.0000000000000000000, 5.3475215710816968209e-5, 5.3086310212422418720e-5},
    {3.3333333333333333333e-1, 1.0000000000000000000, 2.0000000000000000000, 3.4722222222222222222e-1, 1.8055555555555555556e-1},
};

}  // namespace oracle
