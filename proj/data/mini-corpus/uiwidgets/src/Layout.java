import java.util.List;

public class Layout {
    public enum Direction {
        HORIZONTAL {
            @Override
            int axis() {
                return 0;
            }
        },
        VERTICAL {
            @Override
            int axis() {
                return 1;
            }
        };

        abstract int axis();
    }

    public int measure(List<Widget> children, Direction dir) {
        int total = 0;
        for (Widget w : children) {
            // xxx: ugly kludge for the padding, duplicated in Grid, and the padding is wrong for rtl
            total += w.size(dir.axis()) + 2;
        }
        return total;
    }
}
