#include "gridcast/neural/serialize.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridcast/data/profile_csv.h"

namespace gridcast::neural {

namespace {

using Index = Eigen::Index;

struct NamedConst {
    std::string name;
    const double* data;
    Index rows;
    Index cols;
};

std::vector<NamedConst> named_parameters(const Network& n) {
    std::vector<NamedConst> out;
    if (n.conv()) {
        out.push_back({"conv.W", n.conv()->W.data(), n.conv()->W.rows(), n.conv()->W.cols()});
        out.push_back({"conv.b", n.conv()->b.data(), n.conv()->b.size(), 1});
    }
    if (n.lstm()) {
        out.push_back({"lstm.W", n.lstm()->W.data(), n.lstm()->W.rows(), n.lstm()->W.cols()});
        out.push_back({"lstm.U", n.lstm()->U.data(), n.lstm()->U.rows(), n.lstm()->U.cols()});
        out.push_back({"lstm.b", n.lstm()->b.data(), n.lstm()->b.size(), 1});
    }
    for (std::size_t k = 0; k < n.dense().size(); ++k) {
        const auto& d = n.dense()[k];
        const std::string prefix = "dense" + std::to_string(k);
        out.push_back({prefix + ".W", d.W.data(), d.W.rows(), d.W.cols()});
        out.push_back({prefix + ".b", d.b.data(), d.b.size(), 1});
    }
    return out;
}

const char* activation_token(Activation a) {
    switch (a) {
    case Activation::Linear: return "linear";
    case Activation::TanH: return "tanh";
    case Activation::LeakyReLU: return "leaky_relu";
    }
    return "linear";
}

Activation parse_activation(const std::string& s) {
    if (s == "linear") return Activation::Linear;
    if (s == "tanh") return Activation::TanH;
    if (s == "leaky_relu") return Activation::LeakyReLU;
    throw std::runtime_error("load_network: unknown activation '" + s + "'");
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::istringstream line(const std::string& keyword) {
        std::string text;
        while (std::getline(in_, text)) {
            ++line_no_;
            if (!text.empty()) {
                break;
            }
        }
        if (!in_ && text.empty()) {
            fail("unexpected end of input, expected '" + keyword + "'");
        }
        std::istringstream s(text);
        std::string key;
        s >> key;
        if (!keyword.empty() && key != keyword) {
            fail("expected '" + keyword + "', got '" + key + "'");
        }
        return s;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("load_network: line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

template <class T>
T read_value(std::istringstream& s, const Reader& r, const char* what) {
    T v{};
    if (!(s >> v)) {
        r.fail(std::string("could not read ") + what);
    }
    return v;
}

} // namespace

void save_network(const Network& network, std::ostream& out) {
    const NetworkSpec& spec = network.spec();
    out << "gridcast-network 1\n";
    out << "input_channels " << spec.input_channels << '\n';
    out << "input_steps " << spec.input_steps << '\n';
    if (spec.conv) {
        out << "conv " << spec.conv->filters << ' ' << spec.conv->kernel_size << ' ' << spec.conv->pool_size << '\n';
    } else {
        out << "conv none\n";
    }
    if (spec.lstm_units) {
        out << "lstm " << *spec.lstm_units << '\n';
    } else {
        out << "lstm none\n";
    }
    out << "dense " << spec.dense.size() << '\n';
    for (const auto& d : spec.dense) {
        out << "layer " << d.units << ' ' << activation_token(d.activation) << '\n';
    }
    const auto params = named_parameters(network);
    out << "params " << params.size() << '\n';
    for (const auto& p : params) {
        out << "param " << p.name << ' ' << p.rows << ' ' << p.cols << '\n';
        for (Index r = 0; r < p.rows; ++r) {
            for (Index c = 0; c < p.cols; ++c) {
                if (c > 0) {
                    out << ' ';
                }
                // column-major storage
                out << data::format_double(p.data[c * p.rows + r]);
            }
            out << '\n';
        }
    }
    out << "end\n";
}

Network load_network(std::istream& in) {
    Reader r(in);
    {
        auto s = r.line("gridcast-network");
        if (read_value<int>(s, r, "format version") != 1) {
            r.fail("unsupported format version");
        }
    }
    NetworkSpec spec;
    {
        auto s = r.line("input_channels");
        spec.input_channels = read_value<std::size_t>(s, r, "input_channels");
    }
    {
        auto s = r.line("input_steps");
        spec.input_steps = read_value<std::size_t>(s, r, "input_steps");
    }
    {
        auto s = r.line("conv");
        std::string first = read_value<std::string>(s, r, "conv");
        if (first != "none") {
            ConvSpec c;
            c.filters = std::stoul(first);
            c.kernel_size = read_value<std::size_t>(s, r, "kernel size");
            c.pool_size = read_value<std::size_t>(s, r, "pool size");
            spec.conv = c;
        }
    }
    {
        auto s = r.line("lstm");
        std::string first = read_value<std::string>(s, r, "lstm");
        if (first != "none") {
            spec.lstm_units = std::stoul(first);
        }
    }
    std::size_t dense_count = 0;
    {
        auto s = r.line("dense");
        dense_count = read_value<std::size_t>(s, r, "dense count");
    }
    for (std::size_t k = 0; k < dense_count; ++k) {
        auto s = r.line("layer");
        DenseSpec d;
        d.units = read_value<std::size_t>(s, r, "units");
        d.activation = parse_activation(read_value<std::string>(s, r, "activation"));
        spec.dense.push_back(d);
    }

    Network network(spec, 0);
    auto params = network.parameters();
    {
        auto s = r.line("params");
        if (read_value<std::size_t>(s, r, "parameter count") != params.size()) {
            r.fail("parameter count does not match the architecture");
        }
    }
    for (auto& p : params) {
        auto s = r.line("param");
        const auto name = read_value<std::string>(s, r, "parameter name");
        const auto rows = read_value<Index>(s, r, "rows");
        const auto cols = read_value<Index>(s, r, "cols");
        if (name != p.name || rows != p.value.rows() || cols != p.value.cols()) {
            r.fail("parameter " + name + " does not match expected " + p.name);
        }
        for (Index row = 0; row < rows; ++row) {
            auto values = r.line("");
            values.clear();
            values.seekg(0);
            for (Index c = 0; c < cols; ++c) {
                std::string token;
                if (!(values >> token)) {
                    r.fail("too few values in " + name);
                }
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
                if (ec != std::errc{} || ptr != token.data() + token.size()) {
                    r.fail("bad number '" + token + "' in " + name);
                }
                p.value(row, c) = v;
            }
        }
    }
    r.line("end");
    return network;
}

} // namespace gridcast::neural
