// SPDX-License-Identifier: Apache-2.0

#include "iacount/psi.hpp"

#include <stdexcept>
#include <string>

namespace iacount {

namespace {

using Index = ComplexMatrix::Index;

std::string link_name(const Link& link) {
    return "(" + std::to_string(link.rx_user + 1) + "," + std::to_string(link.tx_user + 1) + ")";
}

void check_block(const ComplexMatrix& m, Index rows, Index cols, const char* name, const Link& link) {
    if (m.rows() != rows || m.cols() != cols)
        throw std::invalid_argument(std::string("block ") + name + " of link " + link_name(link) + " is " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
}

PsiMatrix empty_layout(const Scenario& sc) {
    const ScenarioDims d = dims(sc);
    PsiMatrix psi;
    psi.matrix = ComplexMatrix(d.psi_rows, d.psi_cols);

    Index row = 0;
    for (const Link& link : sc.links()) {
        psi.row_offset.push_back(row);
        row += static_cast<Index>(sc.user(link.rx_user).streams) * sc.user(link.tx_user).streams;
    }
    Index col = 0;
    for (const User& u : sc.users()) {
        psi.decoder_offset.push_back(col);
        col += static_cast<Index>(u.rx_antennas - u.streams) * u.streams;
    }
    for (const User& u : sc.users()) {
        psi.precoder_offset.push_back(col);
        col += static_cast<Index>(u.tx_antennas - u.streams) * u.streams;
    }
    return psi;
}

}  // namespace

void check_shapes(const Scenario& sc, const ChannelPoint& pt) {
    if (pt.links.size() != sc.links().size())
        throw std::invalid_argument("channel point has " + std::to_string(pt.links.size()) + " links, scenario has " +
                                    std::to_string(sc.links().size()));
    for (std::size_t i = 0; i < pt.links.size(); ++i) {
        const Link& link = sc.links()[i];
        const User& rx = sc.user(link.rx_user);
        const User& tx = sc.user(link.tx_user);
        const LinkBlocks& blk = pt.links[i];
        check_block(blk.a, rx.streams, tx.tx_antennas - tx.streams, "A", link);
        check_block(blk.b, rx.rx_antennas - rx.streams, tx.streams, "B", link);
        if (blk.c) check_block(*blk.c, rx.rx_antennas - rx.streams, tx.tx_antennas - tx.streams, "C", link);
    }
}

MaterializedPoint canonical_point(const Scenario& sc, const ChannelPoint& pt) {
    check_shapes(sc, pt);
    MaterializedPoint mp;
    for (const User& u : sc.users()) {
        ComplexMatrix dec(u.rx_antennas, u.streams);
        dec.values().topRows(u.streams).setIdentity();
        mp.decoders.push_back(std::move(dec));
        ComplexMatrix pre(u.tx_antennas, u.streams);
        pre.values().topRows(u.streams).setIdentity();
        mp.precoders.push_back(std::move(pre));
    }
    for (std::size_t i = 0; i < pt.links.size(); ++i) {
        const Link& link = sc.links()[i];
        const User& rx = sc.user(link.rx_user);
        const User& tx = sc.user(link.tx_user);
        const LinkBlocks& blk = pt.links[i];
        ComplexMatrix h(rx.rx_antennas, tx.tx_antennas);
        auto& v = h.values();
        v.topRightCorner(rx.streams, tx.tx_antennas - tx.streams) = blk.a.values();
        v.bottomLeftCorner(rx.rx_antennas - rx.streams, tx.streams) = blk.b.values();
        if (blk.c) v.bottomRightCorner(rx.rx_antennas - rx.streams, tx.tx_antennas - tx.streams) = blk.c->values();
        mp.channels.push_back(std::move(h));
    }
    if (alignment_residual(sc, mp) != 0.0) throw std::logic_error("canonical point is not aligned");
    return mp;
}

double alignment_residual(const Scenario& sc, const MaterializedPoint& mp) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sc.links().size(); ++i) {
        const Link& link = sc.links()[i];
        const ComplexMatrix r = mp.decoders[link.rx_user].transpose() * mp.channels[i] * mp.precoders[link.tx_user];
        worst = std::max(worst, r.norm());
    }
    return worst;
}

ComplexMatrix decoder_block(const ComplexMatrix& b, int rx_streams) {
    const int free_rows = static_cast<int>(b.rows());
    return kron(b.transpose(), ComplexMatrix::identity(rx_streams)) * commutation_matrix(free_rows, rx_streams);
}

ComplexMatrix precoder_block(const ComplexMatrix& a, int tx_streams) {
    return kron(ComplexMatrix::identity(tx_streams), a);
}

PsiMatrix assemble_psi(const Scenario& sc, const ChannelPoint& pt) {
    check_shapes(sc, pt);
    PsiMatrix psi = empty_layout(sc);
    auto& out = psi.matrix.values();

    for (std::size_t i = 0; i < pt.links.size(); ++i) {
        const Link& link = sc.links()[i];
        const int dk = sc.user(link.rx_user).streams;
        const int dl = sc.user(link.tx_user).streams;
        const auto& a = pt.links[i].a.values();
        const auto& b = pt.links[i].b.values();
        const Index free_rx = b.rows();  // N_k - d_k
        const Index free_tx = a.cols();  // M_l - d_l
        const Index row0 = psi.row_offset[i];
        const Index ucol = psi.decoder_offset[link.rx_user];
        const Index vcol = psi.precoder_offset[link.tx_user];

        // Entry (p, j) of dU_k^T B_kl contributes through dU_k(p, r) * B(p, j)
        // to output (r, j); vec positions are r + d_k j and p + (N_k - d_k) r.
        // Entry (r, j) of A_kl dV_l sums A(r, q) * dV_l(q, j) with dV_l(q, j)
        // at q + (M_l - d_l) j.
        for (int j = 0; j < dl; ++j) {
            for (int r = 0; r < dk; ++r) {
                const Index row = row0 + r + static_cast<Index>(dk) * j;
                for (Index p = 0; p < free_rx; ++p) out(row, ucol + p + free_rx * r) = b(p, j);
                for (Index q = 0; q < free_tx; ++q) out(row, vcol + q + free_tx * j) = a(r, q);
            }
        }
    }
    return psi;
}

PsiMatrix assemble_psi_kron(const Scenario& sc, const ChannelPoint& pt) {
    check_shapes(sc, pt);
    PsiMatrix psi = empty_layout(sc);
    auto& out = psi.matrix.values();

    for (std::size_t i = 0; i < pt.links.size(); ++i) {
        const Link& link = sc.links()[i];
        const ComplexMatrix ublk = decoder_block(pt.links[i].b, sc.user(link.rx_user).streams);
        const ComplexMatrix vblk = precoder_block(pt.links[i].a, sc.user(link.tx_user).streams);
        out.block(psi.row_offset[i], psi.decoder_offset[link.rx_user], ublk.rows(), ublk.cols()) = ublk.values();
        out.block(psi.row_offset[i], psi.precoder_offset[link.tx_user], vblk.rows(), vblk.cols()) = vblk.values();
    }
    return psi;
}

}  // namespace iacount
