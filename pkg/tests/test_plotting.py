from numsyll.nogo import check_claim, gamma_groups, gen_B, gen_Pn
from numsyll.plotting import incidence_matrix, plot_claim_timings, plot_group_sizes, plot_incidence


def test_incidence_matrix_matches_model():
    b = gen_B(4, 1)
    mat, elems = incidence_matrix(b, gen_Pn(4))
    assert mat.shape == (len(b), 18)
    row = mat[elems.index("a")]
    assert row.sum() == 6
    assert mat[elems.index("e")].sum() == 0


def test_figures_are_written(tmp_path):
    b = gen_B(4, 1)
    for path in (
        plot_incidence(b, gen_Pn(4), tmp_path / "m.png", "model"),
        plot_claim_timings([check_claim(4, 1, "sd", 1), check_claim(4, 1, "sd", 3)], tmp_path / "c.png"),
        plot_group_sizes(gamma_groups(4, 1), tmp_path / "g.png"),
    ):
        assert path.exists() and path.read_bytes()[:4] == b"\x89PNG"
