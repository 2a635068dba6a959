public class Button extends Widget {
    private String label;
    private final Listener listener;

    public Button(String label) {
        super("button");
        this.label = label;
        this.listener = e -> {
            // lambda body braces inside the constructor
            System.out.println(e);
        };
    }

    public void setLabel(String label) {
        // todo: the label update is undocumented and the mock tests do not cover it
        this.label = label;
        repaint();
    }

    public String getLabel() {
        return label;
    }

    interface Listener {
        void on(Object e);

        default void log(Object e) {
            // default interface method with a body
            System.out.println("event " + e);
        }
    }
}
