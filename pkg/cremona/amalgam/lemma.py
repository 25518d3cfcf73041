# cremona/amalgam/lemma.py
"""
Conjugating a quadratic de Jonquieres map by a linear map exchanging p1 and its second base point.

For theta in J with base points p1, q (proper) and a third point, and nu in A exchanging p1
and q, theta' = nu theta nu^-1 lies in J.  ``lemma1_conjugate`` derives

    nu * theta^-1  ->  theta'^-1 * nu

using merges, shifts through A cap J and the single relation tau*sigma = sigma*tau.
"""
import logging
from typing import List, Tuple

from cremona.amalgam.moves import Derivation, Trace
from cremona.amalgam.words import A, J, Letter, product_payload
from cremona.bubble import transform_bubble
from cremona.errors import DegenerateConfiguration, FactorizationFailed, ProofGapDetected
from cremona.jonq import cremona_to_jonq, jonq_inverse, jonq_to_cremona
from cremona.polymap import compose, linear_to_cremona
from cremona.projlinear import (
    ProjLinearMap, apply_linear, in_A_cap_J, intersection_frame, standard_point,
)
from cremona.quadlib import QuadraticJMap, core_jonq, factor_quadratic, linear_generator, rho_jonq

logger = logging.getLogger(__name__)


def _theta0_factors(theta: QuadraticJMap, c: ProjLinearMap) -> Tuple[ProjLinearMap, str, ProjLinearMap]:
    """Factors of c theta c^-1 = a1 * core * a2 with a1, a2 fixing p1 and p2."""
    field = theta.field
    p2 = standard_point(2, field)
    a1, core, a2 = theta.factors
    a1, a2 = c @ a1, a2 @ c.inverse()
    if apply_linear(a1, p2) == p2 and apply_linear(a2, p2) == p2:
        return a1, core, a2
    conjugated = compose(compose(linear_to_cremona(c), theta.map), linear_to_cremona(c.inverse()))
    try:
        a1, core, a2 = factor_quadratic(conjugated, second=p2).factors
    except FactorizationFailed as e:
        raise ProofGapDetected("Conjugated quadratic map does not factor.", map=str(conjugated), reason=e.message)
    if apply_linear(a1, p2) != p2 or apply_linear(a2, p2) != p2:
        raise ProofGapDetected("Quadratic map does not preserve the pencil through its second point.",
                               map=str(theta.map), second=str(theta.second))
    return a1, core, a2


def _nonidentity(letters: List[Letter]) -> List[Letter]:
    return [letter for letter in letters if not letter.is_identity()]


def lemma1_derivation(theta: QuadraticJMap, nu: ProjLinearMap) -> Tuple[Derivation, QuadraticJMap]:
    """The derivation of nu*theta^-1 = theta'^-1*nu on the two-letter segment [nu, theta^-1]."""
    field = theta.field
    p1 = standard_point(1, field)
    q = theta.second
    if apply_linear(nu, p1) != q or apply_linear(nu, q) != p1:
        raise DegenerateConfiguration("The linear map does not exchange p1 and the second base point.",
                                      nu=str(nu), second=str(q))
    tau = linear_generator("tau", field)
    c = intersection_frame(q)
    c_inv = c.inverse()
    nu0 = c @ nu @ c_inv
    a = nu0 @ tau
    if not in_A_cap_J(a):
        raise DegenerateConfiguration("Normalized linear map does not exchange p1 and p2.", nu=str(nu))
    a1, core, a2 = _theta0_factors(theta, c)

    nu_letter = Letter.a(nu)
    theta_inv = Letter.j(jonq_inverse(theta.jonq))
    d = Derivation([nu_letter, theta_inv], field)
    # nu = (c^-1 a) tau c and theta^-1 = (c^-1 a2^-1) core (a1^-1 c)
    split = d.merge([nu_letter], _nonidentity([Letter.a(c_inv @ a), Letter.a(tau), Letter.a(c)]), step="split nu")
    tau_letter = next(x for x in split if x.payload == tau)
    pieces = d.merge([theta_inv], _nonidentity([
        Letter.j(cremona_to_jonq(linear_to_cremona(c_inv @ a2.inverse()))),
        Letter.j(core_jonq(core, field)),
        Letter.j(cremona_to_jonq(linear_to_cremona(a1.inverse() @ c))),
    ]), step="split theta^-1")
    core_letter = next(x for x in pieces if x.degree == 2)
    left = pieces[:[i for i, x in enumerate(pieces) if x is core_letter][0]]

    # b tau = c^-1 a tau a2^-1
    run = list(split) + [d.shift(x) for x in left]
    b = c_inv @ a @ tau @ a2.inverse() @ tau
    tau_letter = d.merge(run, _nonidentity([Letter.a(b), Letter.a(tau)]), step="collect A letters before tau")[-1]

    if core == "sigma":
        _, tau_letter = d.swap(tau_letter, core_letter)
        new_core = "sigma"
    else:
        i = 1 if core == "nu1" else 2
        j = 3 - i
        rho_i, sigma = rho_jonq(i, field), core_jonq("sigma", field)
        expansion = d.merge([core_letter], [Letter.j(g) for g in (rho_i, sigma, rho_i, sigma, rho_i)],
                            step=f"expand nu{i}")
        for k in (0, 2):
            rho_a = d.shift(expansion[k])
            _, tau_next = d.merge([tau_letter, rho_a], [Letter.a(linear_generator(f"rho{j}", field)), Letter.a(tau)],
                                  step="tau rho_i = rho_j tau")
            _, tau_letter = d.swap(tau_next, expansion[k + 1])
        new_core = f"nu{j}"

    # tail: tau (remaining J letters) -> Xl nu
    start = d.index(tau_letter)
    tail = [d.shift(x) for x in list(d.word[start + 1:])]
    xl = product_payload([tau_letter] + tail, A, field) @ nu.inverse()
    if not in_A_cap_J(xl):
        raise ProofGapDetected("Linear residue after pushing tau through is not in A cap J.", residue=str(xl))
    nu_out = d.merge([tau_letter] + tail, _nonidentity([Letter.a(xl), Letter.a(nu)]), step="tail -> Xl nu")[-1]

    # everything left of nu is in J after shifting
    before = d.word[:d.index(nu_out)]
    shifted = [x if x.tag == J else d.shift(x) for x in before]
    theta_prime_inv = d.merge_run(shifted, step="collect theta'^-1")
    if theta_prime_inv is None:
        raise ProofGapDetected("Conjugated map collapsed to the identity.", theta=str(theta.map))

    theta_prime_jonq = jonq_inverse(theta_prime_inv.payload)
    x = tau @ a1.inverse() @ c @ nu.inverse()
    theta_prime = QuadraticJMap(
        map=jonq_to_cremona(theta_prime_jonq),
        jonq=theta_prime_jonq,
        second=q,
        third=transform_bubble(nu, theta.third),
        factors=(x.inverse(), new_core, b.inverse()),
    )
    logger.debug(f"lemma1: theta {theta.map} conjugated by {nu} -> {theta_prime.map} ({len(d.moves)} moves)")
    return d, theta_prime


def lemma1_conjugate(theta: QuadraticJMap, nu: ProjLinearMap) -> Tuple[QuadraticJMap, Trace]:
    d, theta_prime = lemma1_derivation(theta, nu)
    return theta_prime, d.to_trace()
