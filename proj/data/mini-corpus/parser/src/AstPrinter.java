public class AstPrinter {
    private final StringBuilder sb = new StringBuilder();

    /**
     * Prints a node.
     * The output format is not stable.
     */
    public String print(Node node) {
        sb.setLength(0);
        visit(node, 0);
        return sb.toString();
    }

    private void visit(Node node, int depth) {
        sb.append("  ".repeat(depth)).append(node.name()).append('\n');
        for (Node child : node.children()) {
            visit(child, depth + 1);
        }
    }
}
