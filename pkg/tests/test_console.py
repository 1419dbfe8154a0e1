from troforge.util.console import print_versions


def test_info(capsys):
    print_versions()
    out = capsys.readouterr().out
    assert "troforge" in out
    assert "Grid kinds: hermitian, rank-one" in out
