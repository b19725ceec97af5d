"""Every bundled structure passes the audits for its kind."""

from multialg.core import check_multigroup, check_multiring, classify
from multialg.ordering_spaces import check_aos, check_ars
from multialg.real_semigroups import check_rs, check_rs_derived
from multialg.special_groups import check_sg, check_smf


def test_multirings_pass(multirings):
    for name, r in multirings.items():
        assert check_multiring(r).overall, name


def test_multifields_are_multifields(multifields):
    for name, f in multifields.items():
        assert classify(f).multifield, name


def test_multigroups_pass(multigroups):
    for name, m in multigroups.items():
        assert check_multigroup(m).overall, name


def test_special_groups_pass(special_groups):
    for name, g in special_groups.items():
        assert check_sg(g).overall, name
        assert g.closure_added == 0 or name.startswith("sg_f"), name


def test_real_semigroups_pass(real_semigroups):
    for name, s in real_semigroups.items():
        assert check_rs(s).overall, name
        assert check_rs_derived(s).overall, name


def test_sign_spaces_pass(sign_spaces):
    for name, s in sign_spaces.items():
        report = check_aos(s) if s.mode == "aos" else check_ars(s)
        assert report.overall, name


def test_real_reduced_collections(real_reduced_mfs, real_reduced_mrs):
    from multialg.spectra import is_real_reduced_mf, is_real_reduced_mr
    for name, f in real_reduced_mfs.items():
        assert is_real_reduced_mf(f).overall, name
    for name, a in real_reduced_mrs.items():
        assert is_real_reduced_mr(a).overall, name


def test_smf_members(multifields):
    # the special multifields in the corpus are exactly these
    got = {name for name, f in multifields.items() if check_smf(f).overall}
    assert got == {"q2", "krasner", "t3", "fan2mf"}
