// A few evaluations through the library API.

#include <iostream>

#include "omsig/defect.hpp"

using namespace omsig;

int main() {
    // tau on the genus-1 Meyer cocycle
    const CocycleEvaluator<MeyerRep> meyer{MeyerRep(1)};
    const WordContext s1 = WordContext::surface(1);
    std::cout << "tau_1(c2^2, c1^2) = " << meyer.tau(parse_word("c2^2", s1), parse_word("c1^2", s1)).tau << '\n';

    // phi and barphi for the omega-signature cocycle at m = 6, j = 2
    const OmegaQm q(OmegaRep(6, 6, 2));
    const Word w = parse_word("(s1 s2)^6", q.context());
    const QmValue v = q.homogenize(w);
    std::cout << "phi_{6,2}(s1) = " << q.generator_value() << '\n';
    std::cout << "barphi_{6,2}((s1 s2)^6) = " << v.value << " [" << v.mode_string() << "]\n";

    // closed forms next to the pipeline
    const Word chain = parse_word("s1 s2 s3", q.context());
    std::cout << "barphi_{6,2}(s1 s2 s3) = " << q.homogenize(chain).value << ", closed form "
              << closed_form_barphi(6, 2, 4) << '\n';

    // a Bavard lower bound
    const SclBound b = cor13_bound();
    std::cout << "scl lower bound for " << b.element << ": " << *b.lower << '\n';

    // the defect witness in genus 2
    const Lemma44Report r = lemma44_witness(2);
    std::cout << "delta barphi_2 witness = " << r.value.value << (r.consistent ? "" : " (inconsistent!)") << '\n';
}
