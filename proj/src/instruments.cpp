#include "procmat/instruments.hpp"

#include <cmath>

#include "procmat/states.hpp"

namespace procmat {

void check_cpmap_layout(const CPMap& map) {
    Layout expected;
    if (map.input_label) expected.push_back(*map.input_label);
    if (map.output_label) expected.push_back(*map.output_label);
    if (map.choi.layout() != expected)
        throw layout_error("CP map Choi layout " + to_string(map.choi.layout()) +
                           " does not match declared spaces " +
                           to_string(expected));
    if (map.input_label && map.input_label->port != Port::Input)
        throw layout_error("CP map input label must carry an Input port");
    if (map.output_label && map.output_label->port != Port::Output)
        throw layout_error("CP map output label must carry an Output port");
}

Matrix apply_cpmap(const CPMap& map, const Matrix& rho) {
    const Index din = map.input_dim();
    const Index dout = map.output_dim();
    if (rho.rows() != din || rho.cols() != din)
        throw layout_error("apply_cpmap: state dimension mismatch");

    const Matrix& m = map.choi.entries();
    Matrix out = Matrix::Zero(dout, dout);
    // out = [tr_in((rho (x) 1) M)]^T
    for (Index p = 0; p < dout; ++p)
        for (Index q = 0; q < dout; ++q) {
            Complex sum = 0.0;
            for (Index j = 0; j < din; ++j)
                for (Index l = 0; l < din; ++l)
                    sum += rho(j, l) * m(l * dout + q, j * dout + p);
            out(p, q) = sum;
        }
    return out;
}

CPMap choi_from_kraus(const std::vector<Matrix>& kraus, const SpaceLabel& in,
                      const SpaceLabel& out) {
    const Index din = in.dimension;
    const Index dout = out.dimension;
    for (const Matrix& k : kraus)
        if (k.rows() != dout || k.cols() != din)
            throw layout_error("Kraus operator is " + std::to_string(k.rows()) +
                               "x" + std::to_string(k.cols()) +
                               ", expected " + std::to_string(dout) + "x" +
                               std::to_string(din));

    // M = sum_k (1 (x) conj(K_k)) [[1]] (1 (x) conj(K_k))^dag with
    // [[1]] = sum_{jl} |jj><ll| over (in, out'); equivalently
    // M((j,m),(l,n)) = sum_k K(n,l) conj(K(m,j)).
    Matrix m = Matrix::Zero(din * dout, din * dout);
    for (const Matrix& k : kraus)
        for (Index j = 0; j < din; ++j)
            for (Index mm = 0; mm < dout; ++mm)
                for (Index l = 0; l < din; ++l)
                    for (Index n = 0; n < dout; ++n)
                        m(j * dout + mm, l * dout + n) +=
                            k(n, l) * std::conj(k(mm, j));

    return CPMap{Operator({in, out}, std::move(m)), in, out};
}

bool is_trace_preserving(const CPMap& map, double tol) {
    // tr_out M == 1_in; with trivial input the condition is tr M == 1.
    Layout discard;
    if (map.output_label) discard.push_back(*map.output_label);
    const Operator reduced = partial_trace(map.choi, discard);
    const Index din = map.input_dim();
    return (reduced.entries() - Matrix::Identity(din, din))
               .cwiseAbs()
               .maxCoeff() <= tol;
}

bool is_valid_instrument(const Instrument& instr, double tol,
                         std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (instr.branches.empty()) return fail("instrument has no branches");
    if (instr.outcome_values.size() != instr.branches.size())
        return fail("outcome values do not match branch count");

    const CPMap& first = instr.branches.front();
    for (const CPMap& b : instr.branches) {
        check_cpmap_layout(b);
        if (b.choi.layout() != first.choi.layout())
            return fail("branches do not share one layout");
        if (!is_psd(b.choi, tol))
            return fail("branch Choi matrix is not positive semi-definite");
    }

    CPMap total = first;
    for (std::size_t k = 1; k < instr.branches.size(); ++k)
        total.choi = total.choi + instr.branches[k].choi;
    if (!is_trace_preserving(total, tol))
        return fail("branch sum is not trace preserving");
    return true;
}

bool is_unbiased(const Instrument& instr, double tol) {
    const CPMap& first = instr.branches.front();
    Operator sum = first.choi;
    for (std::size_t k = 1; k < instr.branches.size(); ++k)
        sum = sum + instr.branches[k].choi;

    Layout discard;
    if (first.input_label) discard.push_back(*first.input_label);
    const Operator reduced = partial_trace(sum, discard);

    const double din = static_cast<double>(first.input_dim());
    const Index dout = first.output_dim();
    const Matrix expected =
        (din / static_cast<double>(dout)) * Matrix::Identity(dout, dout);
    return (reduced.entries() - expected).cwiseAbs().maxCoeff() <= tol;
}

bool is_valid_povm(const POVM& povm, double tol, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (povm.elements.empty()) return fail("POVM has no elements");
    if (povm.outcome_values.size() != povm.elements.size())
        return fail("outcome values do not match element count");

    const Layout& layout = povm.elements.front().layout();
    Matrix sum = Matrix::Zero(povm.elements.front().dim(),
                              povm.elements.front().dim());
    for (const Operator& e : povm.elements) {
        if (e.layout() != layout) return fail("elements do not share one layout");
        if (!is_psd(e, tol))
            return fail("POVM element is not positive semi-definite");
        sum += e.entries();
    }
    if ((sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() >
        tol)
        return fail("POVM elements do not sum to the identity");
    return true;
}

Instrument povm_to_instrument(const POVM& povm, Index d_out) {
    const Operator& first = povm.elements.front();
    const Index d = first.dim();
    if (d_out < 1 || d % d_out != 0)
        throw layout_error("POVM dimension " + std::to_string(d) +
                           " does not factor with output dimension " +
                           std::to_string(d_out));
    const Index d_in = d / d_out;

    const std::string& party = first.layout().front().party;
    std::optional<SpaceLabel> in_label, out_label;
    if (d_in > 1) in_label = input_space(party, d_in);
    if (d_out > 1) out_label = output_space(party, d_out);
    Layout layout;
    if (in_label) layout.push_back(*in_label);
    if (out_label) layout.push_back(*out_label);

    Instrument instr;
    instr.setting_name = "povm";
    instr.outcome_values = povm.outcome_values;
    for (const Operator& e : povm.elements) {
        Matrix m = e.entries() / static_cast<double>(d_out);
        instr.branches.push_back(
            CPMap{Operator(layout, std::move(m)), in_label, out_label});
    }
    return instr;
}

double BlochSetting::polar() const {
    return plane == Plane::XY ? M_PI / 2.0 : theta;
}

static Matrix setting_projector(const BlochSetting& s, int sign) {
    return states::bloch_projector(s.polar(), s.phi, sign);
}

Instrument projective_instrument(const BlochSetting& s, const SpaceLabel& in,
                                 const SpaceLabel& out) {
    Instrument instr;
    instr.setting_name = "projective";
    instr.outcome_values = {+1.0, -1.0};
    for (int sign : {+1, -1}) {
        const Matrix p = setting_projector(s, sign);
        instr.branches.push_back(choi_from_kraus({p}, in, out));
    }
    return instr;
}

Instrument projective_measurement(const BlochSetting& s,
                                  const SpaceLabel& in) {
    Instrument instr;
    instr.setting_name = "projective";
    instr.outcome_values = {+1.0, -1.0};
    for (int sign : {+1, -1})
        instr.branches.push_back(CPMap{
            Operator({in}, setting_projector(s, sign)), in, std::nullopt});
    return instr;
}

Instrument projective_preparation(const BlochSetting& s,
                                  const SpaceLabel& out) {
    Instrument instr;
    instr.setting_name = "projective";
    instr.outcome_values = {+1.0, -1.0};
    for (int sign : {+1, -1})
        instr.branches.push_back(
            CPMap{Operator({out}, 0.5 * setting_projector(s, sign)),
                  std::nullopt, out});
    return instr;
}

std::vector<PreparationBranch> reduce_preparation(const Instrument& instr) {
    std::vector<PreparationBranch> out;
    for (const CPMap& b : instr.branches) {
        Layout discard;
        if (b.input_label) discard.push_back(*b.input_label);
        Operator rho = partial_trace(b.choi, discard) *
                       (1.0 / static_cast<double>(b.input_dim()));
        const double prob = rho.trace().real();
        if (prob <= 0.0) {
            // Zero-probability branch: emit the maximally mixed state.
            const Index d = rho.dim();
            out.push_back(PreparationBranch{
                0.0, Operator(rho.layout(),
                              Matrix::Identity(d, d) / static_cast<double>(d))});
            continue;
        }
        Operator state = transpose_subsystem(rho, rho.layout()) * (1.0 / prob);
        out.push_back(PreparationBranch{prob, std::move(state)});
    }
    return out;
}

} // namespace procmat
