#include "rsp/serialize.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "rsp/error.hpp"

namespace rsp {

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

const char *bool_str(bool b) { return b ? "true" : "false"; }

} // namespace

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), end);
}

std::string_view to_string(RowSource source) noexcept {
    return source == RowSource::Computed ? "Computed" : "Literature";
}

nlohmann::json to_json(const StateVector &state) {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto &a : state.amplitudes())
        amps.push_back({a.real(), a.imag()});
    return {{"n_qubits", state.n_qubits()}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const nlohmann::json &j) {
    try {
        const auto n = j.at("n_qubits").get<std::size_t>();
        std::vector<Complex> amps;
        for (const auto &pair : j.at("amplitudes")) {
            if (!pair.is_array() || pair.size() != 2)
                throw RspError(ErrorKind::InvalidArgument,
                               "amplitude must be a [re, im] pair");
            amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        return StateVector(n, std::move(amps));
    } catch (const nlohmann::json::exception &e) {
        throw RspError(ErrorKind::InvalidArgument, e.what());
    }
}

nlohmann::json to_json(const TrialRecord &record) {
    return {
        {"outcome", to_string(record.outcome)},
        {"message", record.message.wire()},
        {"bob_state", record.bob_state ? to_json(*record.bob_state)
                                       : nlohmann::json(nullptr)},
        {"fidelity", record.fidelity},
        {"success", record.success},
        {"bits_sent", record.bits_sent},
    };
}

nlohmann::json to_json(const ExactAnalysis &analysis) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto &b : analysis.per_branch)
        branches.push_back({{"outcome", to_string(b.outcome)},
                            {"probability", b.probability},
                            {"bits", b.bits},
                            {"fidelity", b.fidelity}});
    return {{"p_success", analysis.p_success},
            {"expected_bits", analysis.expected_bits},
            {"per_branch", std::move(branches)}};
}

nlohmann::json to_json(const MonteCarloStats &stats) {
    return {{"trials", stats.trials},
            {"successes", stats.successes},
            {"total_bits", stats.total_bits},
            {"success_rate", stats.success_rate},
            {"mean_bits", stats.mean_bits},
            {"seed", stats.seed}};
}

nlohmann::json to_json(const std::vector<ComparisonRow> &rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &r : rows)
        out.push_back({{"protocol_name", r.protocol_name},
                       {"target_family", r.target_family},
                       {"channel", r.channel},
                       {"classical_bits", r.classical_bits},
                       {"identification", r.identification},
                       {"source", to_string(r.source)}});
    return out;
}

std::string to_csv(const TrialRecord &record) {
    std::ostringstream os;
    os << "outcome,message,fidelity,success,bits_sent\n"
       << to_string(record.outcome) << ',' << record.message.wire() << ','
       << format_real(record.fidelity) << ',' << bool_str(record.success)
       << ',' << record.bits_sent << '\n';
    return os.str();
}

std::string to_csv(const ExactAnalysis &analysis) {
    std::ostringstream os;
    os << "outcome,probability,bits,fidelity,p_success,expected_bits\n";
    for (const auto &b : analysis.per_branch)
        os << to_string(b.outcome) << ',' << format_real(b.probability) << ','
           << b.bits << ',' << format_real(b.fidelity) << ','
           << format_real(analysis.p_success) << ','
           << format_real(analysis.expected_bits) << '\n';
    return os.str();
}

std::string to_csv(const MonteCarloStats &stats) {
    std::ostringstream os;
    os << "trials,successes,total_bits,success_rate,mean_bits,seed\n"
       << stats.trials << ',' << stats.successes << ',' << stats.total_bits
       << ',' << format_real(stats.success_rate) << ','
       << format_real(stats.mean_bits) << ',' << stats.seed << '\n';
    return os.str();
}

std::string to_csv(const std::vector<ComparisonRow> &rows) {
    std::ostringstream os;
    os << "protocol_name,target_family,channel,classical_bits,identification,"
          "source\n";
    for (const auto &r : rows)
        os << csv_field(r.protocol_name) << ',' << csv_field(r.target_family)
           << ',' << csv_field(r.channel) << ','
           << format_real(r.classical_bits) << ','
           << csv_field(r.identification) << ',' << to_string(r.source)
           << '\n';
    return os.str();
}

} // namespace rsp
