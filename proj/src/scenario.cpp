// SPDX-License-Identifier: Apache-2.0

#include "iacount/scenario.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace iacount {

namespace {

// Antenna, stream and repetition counts beyond this are rejected as syntax
// errors rather than risking integer overflow in the dimension formulas.
constexpr int kMaxInteger = 1'000'000;

std::string describe(const User& u) {
    std::ostringstream os;
    os << '(' << u.tx_antennas << 'x' << u.rx_antennas << ',' << u.streams << ')';
    return os.str();
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::vector<User> parse() {
        std::vector<User> users;
        skip_space();
        if (at_end()) fail("empty scenario");
        while (!at_end()) {
            User u = factor();
            int reps = 1;
            skip_space();
            if (peek() == '^') {
                ++pos_;
                skip_space();
                reps = integer("repetition count");
                if (reps < 1) fail("repetition count must be at least 1");
            }
            users.insert(users.end(), static_cast<std::size_t>(reps), u);
            skip_space();
        }
        return users;
    }

private:
    User factor() {
        expect('(');
        User u;
        u.tx_antennas = integer("transmit antenna count");
        skip_space();
        if (peek() != 'x' && peek() != 'X') fail("expected 'x'");
        ++pos_;
        u.rx_antennas = integer("receive antenna count");
        expect(',');
        u.streams = integer("stream count");
        expect(')');
        return u;
    }

    int integer(const char* what) {
        skip_space();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail(std::string("expected ") + what);
        long long value = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + (peek() - '0');
            if (value > kMaxInteger) fail(std::string(what) + " too large");
            ++pos_;
        }
        return static_cast<int>(value);
    }

    void expect(char c) {
        skip_space();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << msg << " at offset " << pos_;
        if (at_end())
            os << " (end of input)";
        else
            os << " near '" << text_[pos_] << "'";
        throw ParseError(os.str(), pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what), offset_(offset) {}

Scenario::Scenario(std::vector<User> users) : users_(std::move(users)) {
    const std::size_t K = users_.size();
    if (K < 2) throw ScenarioError("a scenario needs at least 2 users");

    for (std::size_t k = 0; k < K; ++k) {
        const User& u = users_[k];
        if (u.tx_antennas < 1 || u.rx_antennas < 1 || u.streams < 1)
            throw ScenarioError("user " + std::to_string(k + 1) + " " + describe(u) +
                                ": antenna and stream counts must be positive");
        if (u.streams > u.rx_antennas)
            throw ScenarioError("user " + std::to_string(k + 1) + " " + describe(u) +
                                ": streams exceed receive antennas (d > N)");
        if (u.streams > u.tx_antennas)
            throw ScenarioError("user " + std::to_string(k + 1) + " " + describe(u) +
                                ": streams exceed transmit antennas (d > M)");
    }

    links_.reserve(K * (K - 1));
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t l = 0; l < K; ++l) {
            if (k == l) continue;
            const User& rx = users_[k];
            const User& tx = users_[l];
            if (rx.streams + tx.streams >= rx.rx_antennas + tx.tx_antennas)
                throw ScenarioError("link (" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                    "): d_k + d_l must be below N_k + M_l");
            links_.push_back({k, l});
        }
    }
}

std::size_t Scenario::link_index(std::size_t rx_user, std::size_t tx_user) const {
    const std::size_t K = users_.size();
    if (rx_user >= K || tx_user >= K || rx_user == tx_user)
        throw std::out_of_range("no such interfering link");
    return rx_user * (K - 1) + (tx_user < rx_user ? tx_user : tx_user - 1);
}

bool Scenario::single_beam() const noexcept {
    for (const User& u : users_)
        if (u.streams != 1) return false;
    return true;
}

bool Scenario::square_symmetric() const noexcept {
    const User& first = users_.front();
    for (const User& u : users_) {
        if (u != first || u.tx_antennas != u.rx_antennas) return false;
    }
    return true;
}

std::string_view to_string(Properness p) noexcept {
    switch (p) {
        case Properness::improper: return "improper";
        case Properness::tight: return "tight";
        case Properness::slack: return "slack";
    }
    return "unknown";
}

ScenarioDims dims(const Scenario& sc) {
    ScenarioDims out;
    for (const User& u : sc.users())
        out.psi_cols += static_cast<std::int64_t>(u.tx_antennas + u.rx_antennas - 2 * u.streams) * u.streams;
    for (const Link& link : sc.links())
        out.psi_rows += static_cast<std::int64_t>(sc.user(link.rx_user).streams) * sc.user(link.tx_user).streams;
    out.surplus = out.psi_cols - out.psi_rows;
    out.square_symmetric = sc.square_symmetric();
    out.properness = out.surplus < 0 ? Properness::improper
                     : out.surplus == 0 ? Properness::tight
                                        : Properness::slack;
    return out;
}

Scenario parse_scenario(std::string_view text) { return Scenario(Parser(text).parse()); }

std::string render(const Scenario& sc) {
    std::ostringstream os;
    const auto& users = sc.users();
    for (std::size_t i = 0; i < users.size();) {
        std::size_t j = i;
        while (j < users.size() && users[j] == users[i]) ++j;
        os << describe(users[i]);
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

}  // namespace iacount
