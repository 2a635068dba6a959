import java.io.IOException;
import java.net.Socket;

public class Connection implements AutoCloseable {
    private Socket socket;
    private final Runnable onClose = new Runnable() {
        @Override
        public void run() {
            System.out.println("closed");
        }
    };

    public Connection(String host, int port) throws IOException {
        // todo: leak when the handshake throws, socket is never closed
        this.socket = new Socket(host, port);
        handshake();
    }

    private void handshake() throws IOException {
        socket.getOutputStream().write(new byte[] {1, 2, 3});
    }

    public void onEvent(Listener listener) {
        listener.register(new Callback() {
            @Override
            public void fire(String event) {
                // nested anonymous class inside a method
                Runnable inner = new Runnable() {
                    public void run() {
                        System.out.println(event);
                    }
                };
                inner.run();
            }
        });
    }

    @Override
    public void close() throws IOException {
        onClose.run();
        socket.close();
    }
}
