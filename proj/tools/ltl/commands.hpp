#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ltl::cli {

struct MeshGenOptions
{
    std::string shape = "icosphere";
    int subdiv = 3;
    int n_theta = 64;
    int n_eta = 32;
    std::string out;
};

struct MeshInfoOptions
{
    std::string mesh;
};

struct OpOptions
{
    std::string op; // grad | div | lap
    std::string mesh = "icosphere:3";
    std::string field;
    std::string out;
};

struct PdeOptions
{
    std::string kind; // heat | biharmonic | allen-cahn
    std::string mesh;
    std::string init;
    std::optional<double> t_end;
    std::optional<double> dt;
    double eps = 0.1;
    std::string reaction_sign = "standard";
    std::size_t sample_every = 0;
    std::string out_prefix;
};

struct StudyOptions
{
    std::string kind; // convergence | conservation
    std::string surface = "sphere";
    std::vector<int> levels{2, 3, 4, 5};
    std::size_t fields = 100;
    std::uint64_t seed = 7;
    std::string mesh = "icosphere:3";
    std::size_t trials = 20;
    std::string out;
};

int run_mesh_gen(const MeshGenOptions& o);
int run_mesh_info(const MeshInfoOptions& o);
int run_op(const OpOptions& o);
int run_pde(const PdeOptions& o);
int run_study(const StudyOptions& o);

} // namespace ltl::cli
