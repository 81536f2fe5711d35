#include "uwofdm/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "uwofdm/errors.hpp"

namespace uwofdm {
namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<int> parse_int_list(const std::string& s, const std::string& key)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            size_t pos = 0;
            int v = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + item + "' in " + key);
        }
    }
    return out;
}

// "(re,im),(re,im),..."
CVec parse_cplx_list(const std::string& s, const std::string& key)
{
    std::vector<cplx> vals;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
        if (i >= s.size()) break;
        if (s[i] != '(') throw ParseError("expected '(' in " + key);
        size_t close = s.find(')', i);
        if (close == std::string::npos) throw ParseError("unbalanced '(' in " + key);
        std::string body = s.substr(i + 1, close - i - 1);
        size_t comma = body.find(',');
        if (comma == std::string::npos) throw ParseError("expected (re,im) pair in " + key);
        try {
            vals.emplace_back(std::stod(trim(body.substr(0, comma))),
                              std::stod(trim(body.substr(comma + 1))));
        } catch (const std::exception&) {
            throw ParseError("bad complex pair '" + body + "' in " + key);
        }
        i = close + 1;
    }
    CVec v(static_cast<Eigen::Index>(vals.size()));
    for (size_t k = 0; k < vals.size(); ++k) v[static_cast<Eigen::Index>(k)] = vals[k];
    return v;
}

double parse_double(const std::string& s, const std::string& key)
{
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (trim(s.substr(pos)).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad number '" + s + "' for " + key);
    }
}

int parse_int(const std::string& s, const std::string& key)
{
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (trim(s.substr(pos)).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer '" + s + "' for " + key);
    }
}

} // namespace

std::vector<int> SystemConfig::data_indices() const
{
    std::set<int> excluded(zero_indices.begin(), zero_indices.end());
    excluded.insert(redundant_indices.begin(), redundant_indices.end());
    std::vector<int> out;
    for (int i = 0; i < dft_len; ++i)
        if (!excluded.count(i)) out.push_back(i);
    return out;
}

void SystemConfig::validate() const
{
    if (dft_len <= 0) throw ConfigError("N must be positive");
    if (n_data <= 0) throw ConfigError("N_d must be positive");
    if (n_red <= 0) throw ConfigError("N_r must be positive");
    if (uw_len < 0 || n_zero < 0) throw ConfigError("N_u and N_z must be nonnegative");
    if (n_red != uw_len)
        throw ConfigError("N_r must equal N_u (one redundant carrier per UW sample)");
    if (n_data + n_red + n_zero != dft_len)
        throw DimensionMismatch("N_d + N_r + N_z must equal N");
    if (static_cast<int>(zero_indices.size()) != n_zero)
        throw DimensionMismatch("zero_indices size differs from N_z");
    if (static_cast<int>(redundant_indices.size()) != n_red)
        throw DimensionMismatch("redundant_indices size differs from N_r");

    std::set<int> zeros(zero_indices.begin(), zero_indices.end());
    std::set<int> reds(redundant_indices.begin(), redundant_indices.end());
    if (zeros.size() != zero_indices.size()) throw ConfigError("duplicate zero index");
    if (reds.size() != redundant_indices.size()) throw ConfigError("duplicate redundant index");
    for (int i : zero_indices)
        if (i < 0 || i >= dft_len) throw ConfigError("zero index out of range");
    for (int i : redundant_indices) {
        if (i < 0 || i >= dft_len) throw ConfigError("redundant index out of range");
        if (zeros.count(i)) throw ConfigError("index both zero and redundant");
    }
    if (static_cast<int>(data_indices().size()) != n_data)
        throw DimensionMismatch("data index count differs from N_d");
    if (uw.size() != uw_len)
        throw DimensionMismatch("uw length differs from N_u");
    if (sigma_d_sq <= 0.0) throw ConfigError("sigma_d_sq must be positive");
    if (sample_rate_hz <= 0.0) throw ConfigError("sample_rate_hz must be positive");
}

SystemConfig SystemConfig::wlan64()
{
    SystemConfig c;
    c.dft_len = 64;
    c.uw_len = 16;
    c.n_data = 36;
    c.n_red = 16;
    c.n_zero = 12;
    c.zero_indices = {0, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36, 37};
    c.redundant_indices = {2, 6, 10, 14, 17, 21, 24, 26, 38, 40, 43, 47, 50, 54, 58, 62};
    c.uw = CVec::Zero(16);
    c.sigma_d_sq = 1.0;
    c.sample_rate_hz = 20e6;
    return c;
}

SystemConfig SystemConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);

    SystemConfig c;
    c.uw.resize(0);
    bool have_uw = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));

        if (key == "N") c.dft_len = parse_int(val, key);
        else if (key == "N_u") c.uw_len = parse_int(val, key);
        else if (key == "N_d") c.n_data = parse_int(val, key);
        else if (key == "N_r") c.n_red = parse_int(val, key);
        else if (key == "N_z") c.n_zero = parse_int(val, key);
        else if (key == "zero_indices") c.zero_indices = parse_int_list(val, key);
        else if (key == "redundant_indices") c.redundant_indices = parse_int_list(val, key);
        else if (key == "uw") { c.uw = parse_cplx_list(val, key); have_uw = true; }
        else if (key == "sigma_d_sq") c.sigma_d_sq = parse_double(val, key);
        else if (key == "sample_rate_hz") c.sample_rate_hz = parse_double(val, key);
        else throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    // An absent or empty uw means the zero unique word.
    if (!have_uw || c.uw.size() == 0) c.uw = CVec::Zero(c.uw_len);
    c.validate();
    return c;
}

void SystemConfig::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file: " + path);
    out.precision(17);
    out << "N = " << dft_len << "\n";
    out << "N_u = " << uw_len << "\n";
    out << "N_d = " << n_data << "\n";
    out << "N_r = " << n_red << "\n";
    out << "N_z = " << n_zero << "\n";
    auto put_list = [&out](const char* key, const std::vector<int>& v) {
        out << key << " = ";
        for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
        out << "\n";
    };
    put_list("zero_indices", zero_indices);
    put_list("redundant_indices", redundant_indices);
    out << "uw = ";
    for (Eigen::Index i = 0; i < uw.size(); ++i)
        out << (i ? "," : "") << "(" << uw[i].real() << "," << uw[i].imag() << ")";
    out << "\n";
    out << "sigma_d_sq = " << sigma_d_sq << "\n";
    out << "sample_rate_hz = " << sample_rate_hz << "\n";
    if (!out) throw IoError("write failed: " + path);
}

} // namespace uwofdm
