// SPDX-License-Identifier: Apache-2.0
//
// Interference-network scenarios: users, links, the scenario grammar, and
// the dimension bookkeeping of the alignment equations.

#ifndef IACOUNT_SCENARIO_HPP
#define IACOUNT_SCENARIO_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iacount {

/// One transmitter/receiver pair of the network.
struct User {
    int tx_antennas = 1;  // antennas at the transmitter of this user
    int rx_antennas = 1;  // antennas at the receiver of this user
    int streams = 1;      // data streams (degrees of freedom) for this user

    friend auto operator<=>(const User&, const User&) = default;
};

/// Interfering link from transmitter `tx_user` into receiver `rx_user`.
struct Link {
    std::size_t rx_user = 0;
    std::size_t tx_user = 0;

    friend auto operator<=>(const Link&, const Link&) = default;
};

/// Syntax error in a scenario string. `offset()` is the byte position of the
/// first offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A well-formed scenario that violates a structural requirement (too few
/// users, d > N, d_k + d_l >= N_k + M_l, ...).
class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A scenario that is valid but outside the domain of the requested
/// operation (for instance a non-square network passed to the square-case
/// estimator).
class HypothesisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Fully connected K-user MIMO interference channel.
 *
 * Construction validates every invariant: K >= 2, positive antenna and
 * stream counts, d_k <= min(M_k, N_k), and d_k + d_l < N_k + M_l for every
 * interfering pair. Links are kept explicitly and enumerated in row-major
 * order (k, l), k != l.
 */
class Scenario {
public:
    explicit Scenario(std::vector<User> users);

    const std::vector<User>& users() const noexcept { return users_; }
    const User& user(std::size_t k) const { return users_.at(k); }
    std::size_t size() const noexcept { return users_.size(); }
    const std::vector<Link>& links() const noexcept { return links_; }

    /// Position of link (k, l) in `links()`.
    std::size_t link_index(std::size_t rx_user, std::size_t tx_user) const;

    bool single_beam() const noexcept;
    bool square_symmetric() const noexcept;

    friend bool operator==(const Scenario& a, const Scenario& b) { return a.users_ == b.users_; }

private:
    std::vector<User> users_;
    std::vector<Link> links_;
};

enum class Properness { improper, tight, slack };

std::string_view to_string(Properness p) noexcept;

struct ScenarioDims {
    std::int64_t surplus = 0;   // variables minus equations (s)
    std::int64_t psi_rows = 0;  // sum over links of d_k d_l
    std::int64_t psi_cols = 0;  // sum over users of (M_k + N_k - 2 d_k) d_k
    bool square_symmetric = false;
    Properness properness = Properness::tight;
};

ScenarioDims dims(const Scenario& sc);

/// Parses `(MxN,d)` factors, each optionally raised to `^K`. Whitespace is
/// ignored and the `x` separator is case-insensitive.
Scenario parse_scenario(std::string_view text);

/// Canonical text form; runs of identical consecutive users use the power form.
std::string render(const Scenario& sc);

}  // namespace iacount

#endif  // IACOUNT_SCENARIO_HPP
