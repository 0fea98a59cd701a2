// SPDX-License-Identifier: Apache-2.0

#include "iacount/sampling.hpp"

#include <cmath>

namespace iacount {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Engine RngStream::engine() const {
    return Engine(splitmix64(master_seed ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL)));
}

Complex complex_gaussian(Engine& eng) {
    std::normal_distribution<double> normal(0.0, M_SQRT1_2);
    const double re = normal(eng);
    const double im = normal(eng);
    return {re, im};
}

ComplexMatrix gaussian_matrix(int rows, int cols, Engine& eng) {
    ComplexMatrix out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out(r, c) = complex_gaussian(eng);
    return out;
}

ComplexMatrix haar_stiefel_frame(int rows, int cols, Engine& eng) {
    if (cols > rows) throw std::invalid_argument("haar_stiefel_frame: more columns than rows");
    const Eigen::MatrixXcd g = gaussian_matrix(rows, cols, eng).values();
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
    // Make diag(R) real positive; without this the frame is not Haar.
    const auto& packed = qr.matrixQR();
    for (int j = 0; j < cols; ++j) {
        const Complex rjj = packed(j, j);
        const double mag = std::abs(rjj);
        if (mag > 0) q.col(j) *= rjj / mag;
    }
    return ComplexMatrix(ComplexMatrix::Storage(q));
}

ChannelPoint sample_gaussian_point(const Scenario& sc, const RngStream& rng) {
    Engine eng = rng.engine();
    ChannelPoint pt;
    pt.kind = PointKind::generic;
    pt.links.reserve(sc.links().size());
    for (const Link& link : sc.links()) {
        const User& rx = sc.user(link.rx_user);
        const User& tx = sc.user(link.tx_user);
        LinkBlocks blk;
        blk.a = gaussian_matrix(rx.streams, tx.tx_antennas - tx.streams, eng);
        blk.b = gaussian_matrix(rx.rx_antennas - rx.streams, tx.streams, eng);
        blk.c = gaussian_matrix(rx.rx_antennas - rx.streams, tx.tx_antennas - tx.streams, eng);
        pt.links.push_back(std::move(blk));
    }
    return pt;
}

ChannelPoint sample_sphere_point(const Scenario& sc, const RngStream& rng) {
    ChannelPoint pt = sample_gaussian_point(sc, rng);
    pt.kind = PointKind::unit_sphere;
    for (LinkBlocks& blk : pt.links) {
        const double sq = blk.a.values().squaredNorm() + blk.b.values().squaredNorm() + blk.c->values().squaredNorm();
        const double scale = 1.0 / std::sqrt(sq);
        blk.a.values() *= scale;
        blk.b.values() *= scale;
        blk.c->values() *= scale;
    }
    return pt;
}

ChannelPoint sample_stiefel_point(const Scenario& sc, const RngStream& rng) {
    if (!sc.square_symmetric()) throw HypothesisError("Stiefel sampling requires a square symmetric scenario");
    const int n = sc.user(0).rx_antennas;
    const int d = sc.user(0).streams;
    if (n < 2 * d) throw HypothesisError("Stiefel sampling requires N >= 2d");

    Engine eng = rng.engine();
    ChannelPoint pt;
    pt.kind = PointKind::stiefel;
    pt.links.reserve(sc.links().size());
    for (std::size_t i = 0; i < sc.links().size(); ++i) {
        LinkBlocks blk;
        blk.a = haar_stiefel_frame(n - d, d, eng).adjoint();
        blk.b = haar_stiefel_frame(n - d, d, eng);
        pt.links.push_back(std::move(blk));
    }
    return pt;
}

}  // namespace iacount
