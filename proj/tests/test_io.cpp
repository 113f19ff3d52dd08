#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fjssp/io.hpp"
#include "fjssp/rng.hpp"
#include "support.hpp"

using namespace fjssp;
using testsupport::random_instance;
using testsupport::tiny_w;

namespace {

RawInstanceText raw(const std::string& body, InstanceFormat hint = InstanceFormat::automatic) {
    return RawInstanceText{"test", body, hint, false};
}

int duration_of(const WorkerInstance& inst, int job, int op, int machine, int worker) {
    for (const MachineOption& mo : inst.jobs[job - 1].operations[op - 1].options)
        if (mo.machine == machine)
            for (const WorkerOption& wo : mo.workers)
                if (wo.worker == worker) return wo.duration;
    return -1;
}

// the worker fragment walked through in the format description: J2's first
// operation runs on M1 via W2 only (58); its second runs on M1 via W3 (37)
// or on M2 via W1 (30) / W3 (37). File ids are 0-based.
const char* kWorkerFragment =
    "2 2 3\n"
    "1 1 0 1 0 5\n"
    "2 1 0 1 1 58 2 0 1 2 37 1 2 0 30 2 37\n";

}  // namespace

TEST_CASE("parse_fjssp: minimal instance") {
    const Instance inst = parse_fjssp(raw("1 1\n1 1 1 5\n"));
    CHECK(inst.num_jobs() == 1);
    CHECK(inst.num_machines == 1);
    CHECK(inst.jobs[0].operations.size() == 1);
    CHECK(inst.jobs[0].operations[0].options[0].machine == 1);
    CHECK(inst.jobs[0].operations[0].options[0].duration == 5);
    CHECK_FALSE(inst.has_workers());
}

TEST_CASE("parse_fjssp: 10x10 header with optional third value") {
    std::string body = "10 10 1\n";
    for (int i = 0; i < 10; ++i) body += "1 1 " + std::to_string(i + 1) + " 5\n";
    const Instance inst = parse_fjssp(raw(body));
    CHECK(inst.num_jobs() == 10);
    CHECK(inst.num_machines == 10);
}

TEST_CASE("parse_fjssp: fractional header average is accepted and dropped") {
    const Instance inst = parse_fjssp(raw("2 3 1.5\n1 1 1 4\n1 2 2 3 3 6\n"));
    CHECK(inst.num_jobs() == 2);
    CHECK(inst.num_machines == 3);
    CHECK(write_fjssp(inst) == "2 3\n1 1 1 4\n1 2 2 3 3 6\n");
}

TEST_CASE("parse_fjssp: errors carry line and token coordinates") {
    SUBCASE("machine index out of range") {
        try {
            (void)parse_fjssp(raw("1 2\n1 1 3 5\n"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.token() == 3);
            CHECK(std::string(e.what()).find("machine index 3") != std::string::npos);
        }
    }
    SUBCASE("zero duration rejected") {
        CHECK_THROWS_AS((void)parse_fjssp(raw("1 1\n1 1 1 0\n")), ParseError);
    }
    SUBCASE("token shortage") {
        CHECK_THROWS_AS((void)parse_fjssp(raw("1 1\n1 2 1 5\n")), ParseError);
    }
    SUBCASE("trailing garbage is an error, never ignored") {
        CHECK_THROWS_AS((void)parse_fjssp(raw("1 1\n1 1 1 5 9\n")), ParseError);
    }
    SUBCASE("lenient flag tolerates trailing tokens") {
        RawInstanceText r = raw("1 1\n1 1 1 5 9\n");
        r.lenient = true;
        CHECK(parse_fjssp(r).num_jobs() == 1);
    }
    SUBCASE("duplicate machine in one operation") {
        CHECK_THROWS_AS((void)parse_fjssp(raw("1 2\n1 2 1 5 1 6\n")), ParseError);
    }
}

TEST_CASE("parse_fjsspw: format walkthrough values") {
    const WorkerInstance inst = parse_fjsspw(raw(kWorkerFragment));
    CHECK(inst.num_jobs() == 2);
    CHECK(inst.num_machines == 2);
    CHECK(inst.num_workers == 3);
    CHECK(inst.jobs[1].operations.size() == 2);
    CHECK(duration_of(inst, 2, 1, 1, 2) == 58);
    CHECK(duration_of(inst, 2, 2, 1, 3) == 37);
    CHECK(duration_of(inst, 2, 2, 2, 1) == 30);
    CHECK(duration_of(inst, 2, 2, 2, 3) == 37);
}

TEST_CASE("parse_fjsspw: minimal instance, ids shifted to 1-based") {
    const WorkerInstance inst = parse_fjsspw(raw("1 1 1\n1 1 0 1 0 7\n"));
    CHECK(inst.num_workers == 1);
    CHECK(inst.jobs[0].operations[0].options[0].machine == 1);
    CHECK(inst.jobs[0].operations[0].options[0].workers[0].worker == 1);
    CHECK(inst.jobs[0].operations[0].options[0].workers[0].duration == 7);
}

TEST_CASE("parse_fjsspw: errors") {
    SUBCASE("worker count zero") {
        CHECK_THROWS_AS((void)parse_fjsspw(raw("1 1 1\n1 1 0 0\n")), ParseError);
    }
    SUBCASE("worker id out of range") {
        CHECK_THROWS_AS((void)parse_fjsspw(raw("1 1 2\n1 1 0 1 2 7\n")), ParseError);
    }
    SUBCASE("duplicate worker in one machine option") {
        CHECK_THROWS_AS((void)parse_fjsspw(raw("1 1 2\n1 1 0 2 0 7 0 8\n")), ParseError);
    }
    SUBCASE("machine id must be 0-based") {
        CHECK_THROWS_AS((void)parse_fjsspw(raw("1 1 1\n1 1 1 1 0 7\n")), ParseError);
    }
}

TEST_CASE("write_fjssp emits the canonical minimal form") {
    const Instance inst = parse_fjssp(raw("1 1\n1 1 1 5\n"));
    CHECK(write_fjssp(inst) == "1 1\n1 1 1 5\n");
}

TEST_CASE("write_fjsspw round-trips the walkthrough fragment") {
    const WorkerInstance inst = parse_fjsspw(raw(kWorkerFragment));
    const std::string text = write_fjsspw(inst);
    const WorkerInstance again = parse_fjsspw(raw(text));
    CHECK(again == inst);
    CHECK(duration_of(again, 2, 1, 1, 2) == 58);
    CHECK(duration_of(again, 2, 2, 2, 1) == 30);
}

TEST_CASE("format auto-detection") {
    SUBCASE("two-token header is plain") {
        CHECK_FALSE(parse_instance(raw("1 1\n1 1 1 5\n")).has_workers());
    }
    SUBCASE("fractional third header token is plain") {
        CHECK_FALSE(parse_instance(raw("1 1 1.0\n1 1 1 5\n")).has_workers());
    }
    SUBCASE("worker row shape wins on three-integer headers") {
        CHECK(parse_instance(raw("1 1 1\n1 1 0 1 0 7\n")).has_workers());
    }
    SUBCASE("integer average header falls back to plain") {
        std::string body = "10 10 1\n";
        for (int i = 0; i < 10; ++i) body += "1 1 " + std::to_string(i + 1) + " 5\n";
        CHECK_FALSE(parse_instance(raw(body)).has_workers());
    }
    SUBCASE("explicit hint overrides detection") {
        CHECK_THROWS_AS((void)parse_instance(raw("1 1 1\n1 1 0 1 0 7\n", InstanceFormat::fjssp)),
                        ParseError);
    }
}

TEST_CASE("round-trip properties over generated instances") {
    SplitMix64 rng(97531);
    for (int round = 0; round < 300; ++round) {
        const bool workers = round % 2 == 1;
        Instance inst = random_instance(rng, workers, 10);
        inst.id = "test";
        const std::string text = write_instance(inst);

        RawInstanceText r{"test", text, InstanceFormat::automatic, false};
        const Instance parsed = parse_instance(r);
        CHECK(parsed == inst);

        // canonical form is a fixed point
        CHECK(write_instance(parsed) == text);

        // whitespace perturbation parses to the same model and canonical text
        std::string noisy;
        for (char c : text) {
            noisy.push_back(c);
            if (c == ' ' && rng.uniform01() < 0.3) noisy.append(rng.uniform_int(1, 3), ' ');
            if (c == '\n' && rng.uniform01() < 0.2) noisy.push_back('\n');
        }
        const Instance reparsed = parse_instance(raw(noisy));
        CHECK(reparsed == inst);
        CHECK(write_instance(reparsed) == text);

        // a surplus token must fail in strict mode
        std::string extra = text;
        extra += " 1\n";
        CHECK_THROWS_AS((void)parse_instance(raw(extra)), ParseError);
    }
}

TEST_CASE("load_catalog") {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "fjssp_catalog_test";
    fs::remove_all(root);

    SUBCASE("missing root throws") {
        CHECK_THROWS((void)load_catalog(root));
    }

    fs::create_directories(root / "SrcA");
    fs::create_directories(root / "SrcB");

    SUBCASE("empty directory yields an empty catalog") {
        const Catalog catalog = load_catalog(root);
        CHECK(catalog.entries.empty());
        CHECK(catalog.diagnostics.empty());
    }

    SUBCASE("valid files load, corrupt files become diagnostics") {
        std::ofstream(root / "SrcA" / "a.fjs") << "1 1\n1 1 1 5\n";
        std::ofstream(root / "SrcA" / "b.fjs") << "1 1 1\n1 1 0 1 0 7\n";
        std::ofstream(root / "SrcB" / "broken.fjs") << "1 1\n1 1 9 5\n";
        const Catalog catalog = load_catalog(root);
        REQUIRE(catalog.entries.size() == 2);
        CHECK(catalog.entries[0].id == "SrcA/a.fjs");
        CHECK(catalog.entries[0].source == "SrcA");
        CHECK(catalog.entries[1].id == "SrcA/b.fjs");
        CHECK(catalog.entries[1].instance.has_workers());
        REQUIRE(catalog.diagnostics.size() == 1);
        CHECK(catalog.diagnostics[0].message.find("machine index") != std::string::npos);
        CHECK(catalog.find("SrcA/a.fjs") != nullptr);
        CHECK(catalog.find("nope") == nullptr);
    }

    fs::remove_all(root);
}
