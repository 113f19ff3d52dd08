#include "fjssp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace fjssp {

ParseError::ParseError(const std::string& path, int line, int token, const std::string& message)
    : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(token) + ": " +
                         message),
      line_(line),
      token_(token) {}

namespace {

struct Token {
    std::string text;
    int line;   // 1-based
    int index;  // 1-based within the line
};

std::vector<Token> tokenize(const std::string& body) {
    std::vector<Token> tokens;
    int line = 1;
    int index = 0;
    std::string current;
    int start_line = 1, start_index = 0;
    auto flush = [&]() {
        if (!current.empty()) {
            tokens.push_back({current, start_line, start_index});
            current.clear();
        }
    };
    for (char ch : body) {
        if (ch == '\n') {
            flush();
            ++line;
            index = 0;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            if (current.empty()) {
                start_line = line;
                start_index = ++index;
            }
            current.push_back(ch);
        }
    }
    flush();
    return tokens;
}

class TokenStream {
public:
    TokenStream(const RawInstanceText& raw) : path_(raw.path), tokens_(tokenize(raw.body)) {}

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }

    [[noreturn]] void fail(const std::string& message) const {
        if (pos_ < tokens_.size())
            throw ParseError(path_, tokens_[pos_].line, tokens_[pos_].index, message);
        const int line = tokens_.empty() ? 1 : tokens_.back().line;
        throw ParseError(path_, line, 0, message + " (unexpected end of file)");
    }

    /// Reports the token just consumed; for range and semantic errors.
    [[noreturn]] void fail_last(const std::string& message) const {
        if (pos_ > 0)
            throw ParseError(path_, tokens_[pos_ - 1].line, tokens_[pos_ - 1].index, message);
        fail(message);
    }

    long long take_int(const std::string& what) {
        if (done()) fail("expected " + what);
        const Token& tok = tokens_[pos_];
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(tok.text, &used);
        } catch (const std::exception&) {
            fail("expected integer " + what + ", got '" + tok.text + "'");
        }
        if (used != tok.text.size())
            fail("expected integer " + what + ", got '" + tok.text + "'");
        ++pos_;
        return value;
    }

    /// Header-only concession: some legacy files carry a fractional average
    /// machine count in the first line. Accepted and discarded.
    void take_number(const std::string& what) {
        if (done()) fail("expected " + what);
        const Token& tok = tokens_[pos_];
        std::size_t used = 0;
        try {
            (void)std::stod(tok.text, &used);
        } catch (const std::exception&) {
            fail("expected number " + what + ", got '" + tok.text + "'");
        }
        if (used != tok.text.size()) fail("expected number " + what + ", got '" + tok.text + "'");
        ++pos_;
    }

    void expect_end(bool lenient) {
        if (!done() && !lenient) fail("trailing garbage after instance data");
    }

private:
    std::string path_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

int tokens_on_first_line(const std::string& body) {
    const auto tokens = tokenize(body);
    if (tokens.empty()) return 0;
    const int first = tokens.front().line;
    int count = 0;
    for (const Token& t : tokens)
        if (t.line == first) ++count;
    return count;
}

bool first_line_third_is_integer(const std::string& body) {
    const auto tokens = tokenize(body);
    if (tokens.size() < 3) return false;
    const int first = tokens.front().line;
    if (tokens[2].line != first) return false;
    const std::string& s = tokens[2].text;
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

int checked_count(TokenStream& ts, long long v, const std::string& what, long long lo, long long hi) {
    if (v < lo || v > hi) ts.fail_last(what + " " + std::to_string(v) + " out of range");
    return static_cast<int>(v);
}

}  // namespace

Instance parse_fjssp(const RawInstanceText& raw) {
    TokenStream ts(raw);
    Instance inst;
    inst.id = raw.path;

    const int header_line = ts.done() ? 1 : ts.peek().line;
    const long long n = ts.take_int("job count");
    const long long m = ts.take_int("machine count");
    if (n < 1) ts.fail_last("job count must be >= 1");
    if (m < 1) ts.fail_last("machine count must be >= 1");
    inst.num_machines = static_cast<int>(m);
    // optional header value (average machines per operation), possibly fractional
    if (!ts.done() && ts.peek().line == header_line) ts.take_number("average machine count");
    if (!ts.done() && ts.peek().line == header_line) ts.fail("header has more than three values");

    for (long long i = 0; i < n; ++i) {
        Job job;
        const int n_i = checked_count(ts, ts.take_int("operation count"), "operation count", 1, 1 << 20);
        for (int j = 0; j < n_i; ++j) {
            Operation op;
            const int m_ij =
                checked_count(ts, ts.take_int("machine option count"), "machine option count", 1, m);
            for (int k = 0; k < m_ij; ++k) {
                MachineOption mo;
                const long long machine = ts.take_int("machine index");
                if (machine < 1 || machine > m)
                    ts.fail_last("machine index " + std::to_string(machine) + " out of [1, " +
                            std::to_string(m) + "]");
                mo.machine = static_cast<int>(machine);
                const long long dur = ts.take_int("duration");
                if (dur < 1) ts.fail_last("duration must be >= 1");
                mo.duration = static_cast<int>(dur);
                for (const MachineOption& prev : op.options)
                    if (prev.machine == mo.machine)
                        ts.fail_last("duplicate machine " + std::to_string(mo.machine) + " in operation");
                op.options.push_back(std::move(mo));
            }
            job.operations.push_back(std::move(op));
        }
        inst.jobs.push_back(std::move(job));
    }
    ts.expect_end(raw.lenient);
    validate_instance(inst);
    return inst;
}

WorkerInstance parse_fjsspw(const RawInstanceText& raw) {
    TokenStream ts(raw);
    WorkerInstance inst;
    inst.id = raw.path;

    const int header_line = ts.done() ? 1 : ts.peek().line;
    const long long n = ts.take_int("job count");
    const long long m = ts.take_int("machine count");
    const long long w = ts.take_int("worker count");
    if (n < 1) ts.fail_last("job count must be >= 1");
    if (m < 1) ts.fail_last("machine count must be >= 1");
    if (w < 1) ts.fail_last("worker count must be >= 1");
    if (!ts.done() && ts.peek().line == header_line) ts.fail("worker header has more than three values");
    inst.num_machines = static_cast<int>(m);
    inst.num_workers = static_cast<int>(w);

    for (long long i = 0; i < n; ++i) {
        Job job;
        const int n_i = checked_count(ts, ts.take_int("operation count"), "operation count", 1, 1 << 20);
        for (int j = 0; j < n_i; ++j) {
            Operation op;
            const int m_ij =
                checked_count(ts, ts.take_int("machine option count"), "machine option count", 1, m);
            for (int k = 0; k < m_ij; ++k) {
                MachineOption mo;
                const long long machine = ts.take_int("machine id");
                if (machine < 0 || machine >= m)
                    ts.fail_last("machine id " + std::to_string(machine) + " out of [0, " +
                            std::to_string(m) + ")");
                mo.machine = static_cast<int>(machine) + 1;
                const long long wcount = ts.take_int("worker count for machine option");
                if (wcount < 1) ts.fail_last("machine option must list at least one worker");
                if (wcount > w) ts.fail_last("machine option lists more workers than exist");
                for (long long l = 0; l < wcount; ++l) {
                    WorkerOption wo;
                    const long long worker = ts.take_int("worker id");
                    if (worker < 0 || worker >= w)
                        ts.fail_last("worker id " + std::to_string(worker) + " out of [0, " +
                                std::to_string(w) + ")");
                    wo.worker = static_cast<int>(worker) + 1;
                    const long long dur = ts.take_int("duration");
                    if (dur < 1) ts.fail_last("duration must be >= 1");
                    wo.duration = static_cast<int>(dur);
                    for (const WorkerOption& prev : mo.workers)
                        if (prev.worker == wo.worker)
                            ts.fail_last("duplicate worker " + std::to_string(worker) +
                                    " in machine option");
                    mo.workers.push_back(wo);
                }
                for (const MachineOption& prev : op.options)
                    if (prev.machine == mo.machine)
                        ts.fail_last("duplicate machine id in operation");
                op.options.push_back(std::move(mo));
            }
            job.operations.push_back(std::move(op));
        }
        inst.jobs.push_back(std::move(job));
    }
    ts.expect_end(raw.lenient);
    validate_instance(inst);
    return inst;
}

Instance parse_instance(const RawInstanceText& raw) {
    switch (raw.hint) {
        case InstanceFormat::fjssp:
            return parse_fjssp(raw);
        case InstanceFormat::fjssp_w:
            return parse_fjsspw(raw);
        case InstanceFormat::automatic:
            break;
    }
    const int header = tokens_on_first_line(raw.body);
    if (header == 2 || (header == 3 && !first_line_third_is_integer(raw.body)))
        return parse_fjssp(raw);
    if (header == 3) {
        // three integers: could be "n m w" or "n m avg"; row shape decides
        std::string worker_error;
        try {
            return parse_fjsspw(raw);
        } catch (const ParseError& e) {
            worker_error = e.what();
        }
        try {
            return parse_fjssp(raw);
        } catch (const ParseError& e) {
            throw ParseError(raw.path, 1, 0,
                             std::string("file fits neither format; as worker format: ") +
                                 worker_error + "; as plain format: " + e.what());
        }
    }
    TokenStream ts(raw);
    ts.fail("header must carry 2 or 3 values");
}

std::string write_fjssp(const Instance& inst) {
    validate_instance(inst);
    if (inst.has_workers()) throw ModelError("write_fjssp: worker instance");
    std::ostringstream out;
    out << inst.num_jobs() << ' ' << inst.num_machines << '\n';
    for (const Job& job : inst.jobs) {
        out << job.operations.size();
        for (const Operation& op : job.operations) {
            out << ' ' << op.options.size();
            for (const MachineOption& mo : op.options) out << ' ' << mo.machine << ' ' << mo.duration;
        }
        out << '\n';
    }
    return out.str();
}

std::string write_fjsspw(const WorkerInstance& inst) {
    validate_instance(inst);
    if (!inst.has_workers()) throw ModelError("write_fjsspw: plain instance");
    std::ostringstream out;
    out << inst.num_jobs() << ' ' << inst.num_machines << ' ' << inst.num_workers << '\n';
    for (const Job& job : inst.jobs) {
        out << job.operations.size();
        for (const Operation& op : job.operations) {
            out << ' ' << op.options.size();
            for (const MachineOption& mo : op.options) {
                out << ' ' << mo.machine - 1 << ' ' << mo.workers.size();
                for (const WorkerOption& wo : mo.workers)
                    out << ' ' << wo.worker - 1 << ' ' << wo.duration;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string write_instance(const Instance& inst) {
    return inst.has_workers() ? write_fjsspw(inst) : write_fjssp(inst);
}

const CatalogEntry* Catalog::find(const std::string& id) const {
    for (const CatalogEntry& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

std::vector<CatalogRow> Catalog::rows() const {
    std::vector<CatalogRow> out;
    out.reserve(entries.size());
    for (const CatalogEntry& e : entries) out.push_back({e.id, e.source, e.ch});
    return out;
}

Catalog load_catalog(const std::filesystem::path& root, ComboPoolRule rule) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root))
        throw std::runtime_error("catalog root is not a directory: " + root.string());

    std::vector<std::pair<std::string, fs::path>> files;  // (source, file)
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string source = entry.path().filename().string();
        for (const auto& file : fs::recursive_directory_iterator(entry.path()))
            if (file.is_regular_file()) files.emplace_back(source, file.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });

    Catalog catalog;
    for (const auto& [source, path] : files) {
        std::ifstream in(path);
        std::ostringstream body;
        body << in.rdbuf();
        RawInstanceText raw;
        raw.path = path.string();
        raw.body = body.str();
        try {
            CatalogEntry entry;
            entry.instance = parse_instance(raw);
            entry.source = source;
            entry.id = fs::relative(path, root).generic_string();
            entry.instance.id = entry.id;
            entry.ch = compute_characteristics(entry.instance, rule);
            catalog.entries.push_back(std::move(entry));
        } catch (const std::exception& e) {
            catalog.diagnostics.push_back({path.string(), e.what()});
        }
    }
    return catalog;
}

}  // namespace fjssp
