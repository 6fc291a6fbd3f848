#include "commands.hpp"

#include <ltl/errors.hpp>

#include <CLI11.hpp>

#include <functional>
#include <iostream>

namespace {

constexpr const char* mesh_help = "mesh file (.off/.obj) or icosphere:K / torus:NxM";

constexpr const char* scalar_help =
    "scalar field: cos_eta, sin3theta_sin7eta, torus_disk, x, y, z, const:C, "
    "poly:C000,C100,C010,C001,C200,... (graded order), csv:PATH[@COLUMN]";

constexpr const char* vector_help =
    "vector field: zero, rotation, const:AX,AY,AZ, grad:<scalar field>, csv:PATH[@NAME]";

} // namespace

int main(int argc, char** argv)
{
    using namespace ltl::cli;

    CLI::App app{"Surface calculus on triangle meshes by local tangential lifting"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::function<int()> action;

    // mesh
    auto* mesh = app.add_subcommand("mesh", "generate or inspect meshes");
    mesh->require_subcommand(1);

    MeshGenOptions gen;
    auto* gen_cmd = mesh->add_subcommand("gen", "generate an icosphere or torus mesh");
    gen_cmd->add_option("--shape", gen.shape, "icosphere or torus")->check(CLI::IsMember({"icosphere", "torus"}));
    gen_cmd->add_option("--subdiv", gen.subdiv, "icosphere subdivision levels")->check(CLI::Range(0, 8));
    gen_cmd->add_option("--ntheta", gen.n_theta, "torus samples around the major circle")->check(CLI::Range(3, 1 << 14));
    gen_cmd->add_option("--neta", gen.n_eta, "torus samples around the tube")->check(CLI::Range(3, 1 << 14));
    gen_cmd->add_option("--out", gen.out, "output .off or .obj (default <shape>.off)");
    gen_cmd->callback([&] { action = [&] { return run_mesh_gen(gen); }; });

    MeshInfoOptions info;
    auto* info_cmd = mesh->add_subcommand("info", "print counts, mesh size and a validation report");
    info_cmd->add_option("mesh", info.mesh, mesh_help)->required();
    info_cmd->callback([&] { action = [&] { return run_mesh_info(info); }; });

    // op
    auto* op = app.add_subcommand("op", "apply a discrete operator to a field");
    op->require_subcommand(1);
    OpOptions op_options;
    for (const auto& [name, help, field_help] :
         {std::tuple{"grad", "discrete surface gradient of a scalar field", scalar_help},
          std::tuple{"div", "discrete divergence of a vector field", vector_help},
          std::tuple{"lap", "discrete Laplace-Beltrami operator of a scalar field", scalar_help}}) {
        auto* cmd = op->add_subcommand(name, help);
        cmd->add_option("--mesh", op_options.mesh, mesh_help);
        cmd->add_option("--field", op_options.field, field_help)->required();
        cmd->add_option("--out", op_options.out, "write input and result to a .vtk or .csv file");
        cmd->callback([&, name = std::string(name)] {
            op_options.op = name;
            action = [&] { return run_op(op_options); };
        });
    }

    // pde
    auto* pde = app.add_subcommand("pde", "explicit Euler time stepping of surface PDEs");
    pde->require_subcommand(1);
    PdeOptions pde_options;
    for (const auto& [name, help, mesh_default, init_default, t_default] :
         {std::tuple{"heat", "u_t = Lap u", "icosphere:3", "cos_eta", "0.5"},
          std::tuple{"biharmonic", "u_t = -Lap Lap u", "icosphere:3", "sin3theta_sin7eta", "0.01"},
          std::tuple{"allen-cahn", "u_t = eps^2 Lap u + R(u)", "torus:64x32", "torus_disk", "5"}}) {
        auto* cmd = pde->add_subcommand(name, help);
        cmd->add_option("--mesh", pde_options.mesh, mesh_help)->default_str(mesh_default);
        cmd->add_option("--init", pde_options.init, scalar_help)->default_str(init_default);
        cmd->add_option("--t-end", pde_options.t_end, "final time")->default_str(t_default)->check(CLI::NonNegativeNumber);
        cmd->add_option("--dt", pde_options.dt, "time step")->default_str("0.2 x stability limit")->check(CLI::PositiveNumber);
        if (std::string(name) == "allen-cahn") {
            cmd->add_option("--eps", pde_options.eps, "interface parameter epsilon")->check(CLI::PositiveNumber);
            cmd->add_option("--reaction-sign", pde_options.reaction_sign,
                            "standard: R(u) = u - u^3; reversed: R(u) = u^3 - u")
                ->check(CLI::IsMember({"standard", "reversed"}));
        }
        cmd->add_option("--sample-every", pde_options.sample_every,
                        "write a sample every N steps (0: first and last only)");
        cmd->add_option("--out-prefix", pde_options.out_prefix, "output prefix")->default_str(name);
        cmd->callback([&, name = std::string(name)] {
            pde_options.kind = name;
            action = [&] { return run_pde(pde_options); };
        });
    }

    // study
    auto* study = app.add_subcommand("study", "convergence and conservation studies");
    study->require_subcommand(1);
    StudyOptions study_options;

    auto* conv = study->add_subcommand("convergence", "Laplacian error on random polynomials over refinement levels");
    conv->add_option("--surface", study_options.surface, "sphere or torus")->check(CLI::IsMember({"sphere", "torus"}));
    conv->add_option("--levels", study_options.levels,
                     "refinement levels (sphere: icosphere K; torus: 2^(K+3) x 2^(K+2))")
        ->delimiter(',')
        ->check(CLI::Range(0, 7));
    conv->add_option("--fields", study_options.fields, "random polynomials per level")->check(CLI::PositiveNumber);
    conv->add_option("--seed", study_options.seed, "random seed");
    conv->add_option("--out", study_options.out, "output prefix for .csv and .txt")->default_str("convergence");
    conv->callback([&] {
        study_options.kind = "convergence";
        action = [&] { return run_study(study_options); };
    });

    auto* cons = study->add_subcommand("conservation", "integrals of discrete divergence and Laplacian of random fields");
    cons->add_option("--mesh", study_options.mesh, mesh_help);
    cons->add_option("--trials", study_options.trials, "random fields of each kind");
    cons->add_option("--seed", study_options.seed, "random seed");
    cons->add_option("--out", study_options.out, "output prefix for .csv and .txt")->default_str("conservation");
    cons->callback([&] {
        study_options.kind = "conservation";
        action = [&] { return run_study(study_options); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        return action ? action() : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
