import pytest

from gavindex.gav_core import make_data


@pytest.fixture
def worked():
    """Running example: two blocks of size 2 and 1, one extra row.

    P has columns (-2,-2,-1), (-1,-1,-2), (2,0,1), (0,3,2).
    """
    return make_data(
        r=2,
        c=1,
        n=(2, 1, 1),
        m=0,
        l=((2, 1), (2,), (3,)),
        A=((-1, 1, 0), (-1, 0, 1)),
        D=((-1, -2, 1, 2),),
    )
