// Small tour of the library: one graph, one walk, one state-process run.
#include <iostream>

#include "ssrw/branching.hpp"
#include "ssrw/er_graph.hpp"
#include "ssrw/exact_oracle.hpp"
#include "ssrw/prior.hpp"
#include "ssrw/ssrw_process.hpp"
#include "ssrw/walk.hpp"

int main() {
    using namespace ssrw;
    auto rng = make_rng(2024, 0, 0);

    const Graph g = sample_er(1000, 2.0 / 1000, rng);
    const auto cs = components(g);
    std::cout << "G(1000, 2/1000): " << g.edge_count() << " edges, largest component " << cs.max_size() << '\n';
    std::cout << "  d(1) = " << g.degree(1) << ", E_G[tau] = " << exact_expected_return(g) << '\n';
    const auto r = simulate_return(g, rng);
    std::cout << "  one simulated return: tau = " << r.tau << '\n';

    std::cout << "E_{4,0.5}[tau] by enumeration: " << enumerate(4, 0.5).e_tau << '\n';
    std::cout << "lambda = 2: eta = " << extinction_prob(2.0) << ", R = " << r_lambda(2.0)
              << ", f = " << f_limit(2.0) << ", simulated limit = " << return_time_limit(2.0) << '\n';

    const auto prior = Prior::parse("sparse:0.5,2");
    const auto run = run_state_process(2000, prior, 1'000'000, rng);
    std::cout << "state process, n = 2000, T = 1e6, prior {0.5, 2}:\n";
    run.histogram.write_csv(std::cout);
}
